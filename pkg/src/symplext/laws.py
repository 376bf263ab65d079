"""Seeded randomized checks of the algebraic laws the engine relies on."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coalgebra import DualCoalgebra, FiniteDga
from .gca import FreeGca, GcaPresentation, Poly, apply_d, basis_in_degree


def random_scalar(rng: random.Random) -> Fraction:
    num = rng.randint(-5, 5) or 1
    return Fraction(num, rng.randint(1, 4))


def random_homogeneous(alg: FreeGca, degree: int, rng: random.Random, terms: int = 3) -> Poly:
    basis = basis_in_degree(alg, degree, cap=max(degree, 0))
    if not basis:
        return alg.zero()
    picks = rng.sample(basis, min(terms, len(basis)))
    return Poly(alg, {m: random_scalar(rng) for m in picks})


@dataclass
class LawReport:
    seed: int
    cases: int
    failures: list[str] = field(default_factory=list)


def check_laws(pres: GcaPresentation, seed: int, cases: int = 100, max_deg: int = 4,
               B: FiniteDga | None = None) -> LawReport:
    """Koszul commutativity, Leibniz and d² on random elements; counit and
    coassociativity of the dual of ``B`` on random dual vectors."""
    rng = random.Random(seed)
    alg = pres.alg
    report = LawReport(seed, cases)
    degs = sorted({g.degree for g in alg.generators}) or [0]
    for n in range(cases):
        da = rng.randint(0, max_deg)
        db = rng.randint(0, max_deg)
        a = random_homogeneous(alg, da, rng) if degs != [0] else alg.one()
        b = random_homogeneous(alg, db, rng) if degs != [0] else alg.one()
        sign = -1 if (da * db) % 2 else 1
        if a * b != (b * a).scale(sign):
            report.failures.append(f"case {n}: Koszul commutativity fails for ({a}, {b})")
        lhs = apply_d(pres, a * b)
        rhs = apply_d(pres, a) * b + (a * apply_d(pres, b)).scale(-1 if da % 2 else 1)
        if lhs != rhs:
            report.failures.append(f"case {n}: Leibniz fails for ({a}, {b})")
        if apply_d(pres, apply_d(pres, a)).terms:
            report.failures.append(f"case {n}: d∘d({a}) != 0")
    if B is not None:
        coalg = DualCoalgebra(B)
        report.failures += coalg.check_counit() + coalg.check_coassoc() + coalg.check_d_squared()
        for n in range(cases):
            e = random_dual_vector(coalg, rng)
            report.failures += [f"case {n}: {msg}" for msg in coalgebra_law_failures(coalg, e)]
    return report


def random_dual_vector(coalg: DualCoalgebra, rng: random.Random, terms: int = 3) -> dict[int, Fraction]:
    picks = rng.sample(range(coalg.dim), min(terms, coalg.dim))
    return {j: random_scalar(rng) for j in picks}


def coalgebra_law_failures(coalg: DualCoalgebra, e: dict[int, Fraction]) -> list[str]:
    """Counit and coassociativity on one (not necessarily homogeneous) dual vector."""
    out = []
    unit = coalg.algebra.unit
    cp = coalg.coproduct(e)
    left = {b: v for (a, b), v in cp.items() if a == unit}
    right = {a: v for (a, b), v in cp.items() if b == unit}
    want = {j: c for j, c in e.items() if c}
    if left != want or right != want:
        out.append("counit law fails")
    lhs: dict[tuple[int, int, int], Fraction] = {}
    rhs: dict[tuple[int, int, int], Fraction] = {}
    for (a, b), v in cp.items():
        for (x, y), w in coalg.coproduct(a).items():
            lhs[(x, y, b)] = lhs.get((x, y, b), 0) + v * w
        for (x, y), w in coalg.coproduct(b).items():
            rhs[(a, x, y)] = rhs.get((a, x, y), 0) + v * w
    if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
        out.append("coassociativity fails")
    if coalg.differential(coalg.differential(e)):
        out.append("d∘d != 0 on the dual")
    return out
