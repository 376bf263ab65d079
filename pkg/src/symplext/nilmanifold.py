"""Nilmanifold models: degree one generators with lower-triangular d.

For these the reduced model of aut₁ has zero differential in degree one, so
H^*(Baut₁) is polynomial on one degree two class per element of the
reduced degree one basis.  Extendability of the symplectic class then means
that the classifying map kills every such generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bsmodel import BsModel, build_bs_model
from .coalgebra import FiniteDga
from .errors import InputError, ModelInconsistency
from .gca import (FreeGca, GcaPresentation, Poly, apply_d, check_d_squared,
                  differential_matrix, vector_of)
from .separable import ClassifyingData, Extendability, composite_verdict


@dataclass(frozen=True)
class NilmanifoldModel:
    presentation: GcaPresentation
    omega: Poly | None = None

    @property
    def n(self) -> int:
        return len(self.presentation.alg)

    @classmethod
    def torus(cls, n: int) -> "NilmanifoldModel":
        alg = FreeGca([(f"x{i}", 1) for i in range(1, n + 1)])
        return cls(GcaPresentation(alg, {}, name=f"T^{n}"))

    @classmethod
    def kodaira_thurston(cls) -> "NilmanifoldModel":
        alg = FreeGca([(f"x{i}", 1) for i in range(1, 5)])
        x = {g: alg.gen(g) for g in alg.names}
        pres = GcaPresentation(alg, {"x4": x["x1"] * x["x2"]}, name="KT")
        return cls(pres, x["x1"] * x["x3"] + x["x2"] * x["x4"])


def validate_nil(model: NilmanifoldModel | GcaPresentation) -> list[str]:
    """Empty when the model is lower triangular in degree one, d² = 0 and ω (if any) is valid."""
    if isinstance(model, GcaPresentation):
        model = NilmanifoldModel(model)
    pres = model.presentation
    alg = pres.alg
    problems = []
    for i, g in enumerate(alg.generators):
        if g.degree != 1:
            problems.append(f"generator {g.name} has degree {g.degree}, expected 1")
            continue
        for mono in pres.d_gen(i).terms:
            late = [alg.generators[j].name for j, _ in mono if j >= i]
            if late:
                problems.append(f"d({g.name}) involves {', '.join(late)}, not earlier generators")
                break
    problems += [f"d∘d({name}) = {dd}" for name, dd in check_d_squared(pres)]
    if model.omega is not None and not problems:
        problems += _omega_problems(model)
    return problems


def _omega_problems(model: NilmanifoldModel) -> list[str]:
    pres, w = model.presentation, model.omega
    if w.alg != pres.alg:
        return ["symplectic form lives in a different algebra"]
    if w.degrees() != {2}:
        return [f"symplectic form {w} is not homogeneous of degree 2"]
    if apply_d(pres, w).terms:
        return [f"symplectic form {w} is not closed"]
    n = model.n
    if n % 2:
        return [f"odd number of generators ({n}) carries no symplectic form"]
    top = w ** (n // 2)
    if not top.terms:
        return ["ω^(n/2) vanishes"]
    src, tgt, mat = differential_matrix(pres, n - 1, cap=n)
    if linalg.in_span(linalg.transpose(mat, len(tgt)) if mat else [], vector_of(top, tgt)):
        return ["[ω]^(n/2) is zero in cohomology"]
    return []


def nil_bs_model(model: NilmanifoldModel) -> BsModel:
    """The model itself is finite here, so B = ∧V and η = identity."""
    problems = validate_nil(NilmanifoldModel(model.presentation))
    if problems:
        raise InputError("not a nilmanifold model: " + "; ".join(problems))
    pres = model.presentation
    B = FiniteDga.from_free(pres)
    eta = {g: {B.index(g): Fraction(1)} for g in pres.alg.names}
    return build_bs_model(pres, B, eta)


@dataclass(frozen=True)
class PolyGenerators:
    names: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.names)


def baut1_poly_generators(model: NilmanifoldModel, bs: BsModel | None = None) -> PolyGenerators:
    """Degree two polynomial generators [x@1] of H^*(Baut₁)."""
    bs = bs if bs is not None else nil_bs_model(model)
    bad = [f"δ({n}) = {bs.delta(n)}" for n in bs.degree_one if bs.delta(n).terms]
    if bad:
        raise ModelInconsistency("reduced differential does not vanish in degree one: " + "; ".join(bad))
    return PolyGenerators(tuple(bs.degree_one))


def is_extendable_nil(model: NilmanifoldModel, f: ClassifyingData,
                      gens: PolyGenerators | None = None) -> Extendability:
    """Extendable iff H^*(f) vanishes on every degree two generator."""
    gens = gens if gens is not None else baut1_poly_generators(model)
    if tuple(f.source) != gens.names:
        raise InputError(f"classifying data is given on {list(f.source)}, expected {list(gens.names)}")
    ident = [[Fraction(int(r == c)) for c in range(gens.count)] for r in range(gens.count)]
    return composite_verdict(f.matrix, f.target, ident, gens.names)
