"""Acceptance criteria 1-9.

Each ``criterion_n`` returns ``(ok, detail)``.  Under pytest every criterion
is one test and the summary prints one ``CRITERION n: PASS/FAIL`` line per
criterion; ``python3 tests/test_acceptance.py`` prints the same lines.
Every comparison is exact.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import kodaira_thurston_oracle  # noqa: E402
from symplext import linalg  # noqa: E402
from symplext.bsmodel import h1_aut1  # noqa: E402
from symplext.coalgebra import FiniteDga  # noqa: E402
from symplext.gca import FreeGca, GcaPresentation  # noqa: E402
from symplext.laws import check_laws  # noqa: E402
from symplext.nilmanifold import NilmanifoldModel, baut1_poly_generators, nil_bs_model  # noqa: E402
from symplext.separable import (ClassifyingData, SeparableSpec, coefficient_algebra,  # noqa: E402
                                is_extendable, kappa, moduli_dim_s2, separable_bs_model,
                                sum_classifying, torus, torus_cp, torus_over_s2_check)

PAIRS = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)]


def binomial_sum(k, m, start):
    return sum(comb(2 * k, 2 * s) for s in range(start, min(m, k) + 1))


def top_name(m):
    return "b" if m == 1 else f"b^{m}"


# -- criteria -------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    got = [moduli_dim_s2(torus_cp(k, m)).value for k, m in PAIRS]
    elapsed = time.perf_counter() - t0
    want = [binomial_sum(k, m, 1) for k, m in PAIRS]
    ok = got == want == [1, 1, 6, 7, 15, 30] and elapsed < 60
    return ok, f"moduli dims {got}, expected {want}, {elapsed:.1f}s"


def criterion_2():
    found = []
    ok = True
    for m in (1, 2, 3):
        model = separable_bs_model(torus_cp(1, m))
        b1 = model.quotient.gen("b@1")
        value = model.delta(f"y@{top_name(m)}")
        coef = value.coefficient(next(iter(b1.terms))) if value.terms else Fraction(0)
        ok &= value == b1.scale(coef) and coef != 0 and abs(coef) == m + 1
        found.append(str(coef))
    return ok, "coefficients of b@1: " + ", ".join(found)


def criterion_3():
    checked = 0
    for k in (1, 2, 3):
        for m in (1, 2):
            model = separable_bs_model(torus_cp(k, m))
            for i in range(1, k + 1):
                for lam in (1, 2):
                    if not model.reduce_generator(f"b@t{i}{lam}").is_zero():
                        return False, f"b@t{i}{lam} survives for (k,m)=({k},{m})"
                    checked += 1
    return True, f"{checked} generators b@t reduce to 0"


def criterion_4():
    details = []
    for k, m in PAIRS + [(1, 3), (2, 3)]:
        model = separable_bs_model(torus_cp(k, m))
        want = 2 * k + binomial_sum(k, m, 0)
        h1 = set(h1_aut1(model).names)
        missing = set(model.degree_one) - h1
        if len(model.degree_one) != want or missing != {f"y@{top_name(m)}"}:
            return False, f"(k,m)=({k},{m}): |Q1|={len(model.degree_one)} want {want}, H1 misses {missing}"
        details.append(str(want))
    return True, "roster sizes " + ", ".join(details)


def criterion_5():
    bad = [(a, b) for a in range(-3, 4) for b in range(-3, 4)
           if torus_over_s2_check(a, b) != ((a, b) == (0, 0))]
    return not bad, f"49 cases, mismatches {bad}"


def criterion_6():
    counts = []
    for n in range(1, 7):
        model = NilmanifoldModel.torus(n)
        bs = nil_bs_model(model)
        if any(not bs.delta(x).is_zero() for x in bs.degree_one):
            return False, f"T^{n}: nonzero δ"
        counts.append(baut1_poly_generators(model, bs).count)
    kt = NilmanifoldModel.kodaira_thurston()
    bs = nil_bs_model(kt)
    kt_zero = all(bs.delta(x).is_zero() for x in bs.degree_one)
    oracle = kodaira_thurston_oracle().quotient_data()
    kt_count = baut1_poly_generators(kt, bs).count
    ok = counts == list(range(1, 7)) and kt_zero and kt_count == 2 == oracle["dim_q1"] == oracle["dim_h1"]
    return ok, f"T^1..T^6 counts {counts}; KT {kt_count} (oracle {oracle['dim_q1']})"


def _annihilator(km):
    """Rows f with f·K = 0: the left null space of the κ matrix."""
    kt = linalg.transpose([list(r) for r in km.matrix])
    return linalg.nullspace(kt, len(km.target))


def _random_combo(rng, basis, n):
    out = [Fraction(0)] * n
    for vec in basis:
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        out = [x + c * y for x, y in zip(out, vec)]
    return out


def _data(km, rows, base):
    return ClassifyingData(tuple(km.target), base, tuple(tuple(r) for r in rows))


def criterion_7():
    rng = random.Random(20240701)
    spec = torus_cp(2, 1)
    km = kappa(spec)
    n = len(km.target)
    base = ("u1", "u2")
    ann = _annihilator(km)
    fails = 0
    for _ in range(200):
        f = _data(km, [_random_combo(rng, ann, n) for _ in base], base)
        g = _data(km, [_random_combo(rng, ann, n) for _ in base], base)
        ok = (is_extendable(spec, f, km=km).extendable and is_extendable(spec, g, km=km).extendable
              and is_extendable(spec, sum_classifying(f, g), km=km).extendable)
        fails += not ok
    witnesses = 0
    for _ in range(200):
        f = _data(km, [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in base], base)
        # force at least one torus coordinate to be nonzero so f is obstructed
        j = rng.randrange(len(km.source))
        row = rng.randrange(len(base))
        col = [r[j] for r in km.matrix]
        hit = col.index(1)
        rows = [list(r) for r in f.matrix]
        rows[row][hit] += 1 - sum(rows[row][i] * col[i] for i in range(n))
        f = _data(km, rows, base)
        g = _data(km, [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in base], base)
        for h in (f, sum_classifying(f, g), sum_classifying(g, f)):
            v = is_extendable(spec, h, km=km)
            comp = [[sum(h.matrix[r][i] * km.matrix[i][c] for i in range(n)) for c in range(len(km.source))]
                    for r in range(len(base))]
            obstructed = any(x for row_ in comp for x in row_)
            if v.extendable != (not obstructed):
                fails += 1
                continue
            if not v.extendable:
                c = km.source.index(v.witness)
                image = tuple(comp[r][c] for r in range(len(base)))
                if not any(image) or tuple(v.image) != image:
                    fails += 1
                witnesses += 1
    return fails == 0, f"400 pairs, {witnesses} witnesses checked, {fails} failures"


def criterion_8():
    t0 = time.perf_counter()
    alg = FreeGca([("t11", 1), ("t12", 1), ("sigma", 2), ("tau", 3)])
    sigma_tau = SeparableSpec.from_presentation(
        GcaPresentation(alg, {"tau": alg.gen("sigma") ** 2}), 1)
    kt = NilmanifoldModel.kodaira_thurston()
    jobs = [(torus_cp(1, 1), None), (torus_cp(2, 2), None), (sigma_tau, None), (None, kt)]
    failures = []
    total = 0
    for seed, (spec, nil) in enumerate(jobs):
        if spec is not None:
            pres = spec.presentation
            B, _ = coefficient_algebra(spec)
        else:
            pres = nil.presentation
            B = FiniteDga.from_free(pres)
        rep = check_laws(pres, seed, cases=250, B=B)
        failures += rep.failures
        total += rep.cases
    elapsed = time.perf_counter() - t0
    return not failures and total == 1000 and elapsed < 30, \
        f"{total} cases, {len(failures)} failures, {elapsed:.1f}s"


def _supported_specs():
    alg = FreeGca([("t11", 1), ("t12", 1), ("sigma", 2), ("tau", 3)])
    sigma_tau = SeparableSpec.from_presentation(
        GcaPresentation(alg, {"tau": alg.gen("sigma") ** 2}), 1)
    specs = [torus_cp(k, m) for k in (1, 2, 3) for m in (1, 2)]
    specs += [torus(k) for k in (1, 2, 3)] + [torus_cp(0, 1), torus_cp(0, 2), sigma_tau]
    return specs


def criterion_9():
    rng = random.Random(99)
    for spec in _supported_specs():
        if kappa(spec).rank != 2 * spec.k:
            return False, f"κ rank wrong for {spec.presentation.alg.names}"
    spec = torus_cp(2, 1)
    base_model = separable_bs_model(spec)
    km = kappa(spec, base_model)

    def random_f():
        vals = {}
        for name in km.target:
            vals[name] = Fraction(rng.choice([0, 0, 0, 1, -1, 2])) if rng.random() < 0.5 else 0
        return ClassifyingData.from_values(km.target, ("u",), vals)

    def nz():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))

    fails = 0
    for _ in range(50):
        f = random_f()
        want = is_extendable(spec, f, km=km).extendable
        scaled = spec.rescaled(nz(), [nz() for _ in range(spec.k)])
        fails += is_extendable(scaled, f).extendable != want
    for _ in range(50):
        f = random_f()
        want = is_extendable(spec, f, km=km).extendable
        eta = {n: nz() for n in ("t11", "t12", "t21", "t22", "b")}
        model = separable_bs_model(spec, eta)
        kk = kappa(spec, model)
        fails += kk.target != km.target or kk.rank != 4
        fails += is_extendable(spec, f, model=model, km=kk).extendable != want
    return fails == 0, f"{len(_supported_specs())} specs rank 2k; 100 rescaling trials, {fails} failures"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def line(n, ok, detail):
    return f"CRITERION {n}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, acceptance_log):
    ok, detail = CRITERIA[n - 1]()
    acceptance_log.append(line(n, ok, detail))
    print(line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        print(line(i, ok, detail))
        status |= not ok
    sys.exit(status)
