import random
from fractions import Fraction

import pytest

from oracles import kodaira_thurston_oracle, nil_oracle
from symplext.errors import InputError
from symplext.gca import FreeGca, GcaPresentation
from symplext.nilmanifold import (NilmanifoldModel, baut1_poly_generators, is_extendable_nil,
                                  nil_bs_model, validate_nil)
from symplext.separable import ClassifyingData, is_extendable, kappa, torus


def heisenberg_times_circle():
    alg = FreeGca([(f"x{i}", 1) for i in range(1, 5)])
    return NilmanifoldModel(GcaPresentation(alg, {"x3": alg.gen("x1") * alg.gen("x2")}))


def filiform4():
    alg = FreeGca([(f"x{i}", 1) for i in range(1, 5)])
    g = alg.gen
    return NilmanifoldModel(GcaPresentation(alg, {"x3": g("x1") * g("x2"), "x4": g("x1") * g("x3")}))


def test_validate_examples():
    assert validate_nil(NilmanifoldModel.torus(4)) == []
    assert validate_nil(NilmanifoldModel.kodaira_thurston()) == []
    alg = FreeGca([("x1", 1), ("x2", 1), ("x3", 1)])
    bad = GcaPresentation(alg, {"x1": alg.gen("x2") * alg.gen("x3")})
    assert validate_nil(bad)


def test_validate_rejects_higher_degree_and_bad_forms():
    alg = FreeGca([("x1", 1), ("b", 2)])
    assert validate_nil(GcaPresentation(alg))
    kt = NilmanifoldModel.kodaira_thurston()
    g = kt.presentation.alg.gen
    assert validate_nil(NilmanifoldModel(kt.presentation, g("x1") * g("x2"))) != []  # exact, square zero
    assert validate_nil(NilmanifoldModel(kt.presentation, g("x1") * g("x4"))) != []  # not closed


@pytest.mark.parametrize("n", [2, 4, 6])
def test_torus_generators(n):
    model = NilmanifoldModel.torus(n)
    bs = nil_bs_model(model)
    assert all(bs.delta(x).is_zero() for x in bs.degree_one)
    assert baut1_poly_generators(model, bs).count == n


def test_kt_generators_match_oracle():
    gens = baut1_poly_generators(NilmanifoldModel.kodaira_thurston())
    assert gens.names == ("x3@1", "x4@1")
    assert gens.count == kodaira_thurston_oracle().quotient_data()["dim_q1"]


@pytest.mark.parametrize("model,dv", [
    (heisenberg_times_circle(), {"x3": [(1, ["x1", "x2"])]}),
    (filiform4(), {"x3": [(1, ["x1", "x2"])], "x4": [(1, ["x1", "x3"])]}),
])
def test_other_nilmanifolds_match_oracle(model, dv):
    bs = nil_bs_model(model)
    assert all(bs.delta(x).is_zero() for x in bs.degree_one)
    data = nil_oracle(4, dv).quotient_data()
    assert len(bs.degree_one) == data["dim_q1"] == data["dim_h1"]


def test_extendability():
    kt = NilmanifoldModel.kodaira_thurston()
    gens = baut1_poly_generators(kt)
    zero = ClassifyingData.zero(gens.names)
    assert is_extendable_nil(kt, zero, gens).extendable
    t2 = NilmanifoldModel.torus(2)
    g2 = baut1_poly_generators(t2)
    f = ClassifyingData.from_values(g2.names, ["u"], {g2.names[0]: 1})
    v = is_extendable_nil(t2, f, g2)
    assert not v.extendable and v.witness == g2.names[0]
    # no degree two cohomology in the base: empty target basis
    empty = ClassifyingData.zero(gens.names, ())
    assert is_extendable_nil(kt, empty, gens).extendable


def test_extendable_iff_matrix_zero():
    kt = NilmanifoldModel.kodaira_thurston()
    gens = baut1_poly_generators(kt)
    rng = random.Random(11)
    for _ in range(50):
        vals = {n: {"u": Fraction(rng.choice([0, 0, 1, -1, 2]))} for n in gens.names}
        f = ClassifyingData.from_values(gens.names, ["u"], vals)
        zero = all(x == 0 for row in f.matrix for x in row)
        assert is_extendable_nil(kt, f, gens).extendable == zero


def test_torus_pipelines_agree():
    rng = random.Random(3)
    for k in (1, 2):
        nil = NilmanifoldModel.torus(2 * k)
        gens = baut1_poly_generators(nil)
        spec = torus(k)
        km = kappa(spec)
        for _ in range(20):
            vals = [Fraction(rng.choice([0, 0, 0, 1, -2])) for _ in range(2 * k)]
            f_nil = ClassifyingData.from_values(gens.names, ["u"], dict(zip(gens.names, vals)))
            f_sep = ClassifyingData.from_values(km.target, ["u"], dict(zip(km.target, vals)))
            assert is_extendable_nil(nil, f_nil, gens).extendable == is_extendable(spec, f_sep).extendable


def test_source_mismatch():
    kt = NilmanifoldModel.kodaira_thurston()
    with pytest.raises(InputError):
        is_extendable_nil(kt, ClassifyingData.zero(["x1@1"]))


def test_non_nil_model_rejected():
    alg = FreeGca([("x1", 1), ("x2", 1)])
    bad = NilmanifoldModel(GcaPresentation(alg, {"x1": alg.gen("x1") * alg.gen("x2")}))
    with pytest.raises(InputError):
        nil_bs_model(bad)
