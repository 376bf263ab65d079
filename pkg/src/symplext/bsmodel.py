"""Function-space model for the identity component of self-equivalences.

The ambient algebra is the free graded-commutative algebra on all mixed
generators ``v@b`` = v ⊗ b_*, where v runs over the generators of the
target model ∧V and b over the basis of a finite model B of the source.
Its degree is ``|v| - |b|``.  The differential δ is characterised by the
requirement that

    Φ(v) = Σ_b (-1)^τ(|b|) (v ⊗ b_*) ⊗ b

extends to a chain map ∧V → ∧(V ⊗ B_*) ⊗ B, with τ(n) = ⌊(n+1)/2⌋.
Writing that out on a monomial d(v) = v_1 ⋯ v_m pairs the factors with
the terms of the (m-1)-fold iterated coproduct of the dual basis element,
which is how :func:`delta_on_generator` computes it.

The connected model for the identity component is the quotient by the
ideal generated by the negative-degree generators, by ω - u(ω) for the
degree zero generators (u(v ⊗ b_*) = (-1)^τ(|v|) <b_*, η(v)>) and by
δω for degree zero ω.  Only generators of degree at most three are kept,
which is enough for the degree one part, its differential into degree
two, and δ² = 0 checks on degree one.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .coalgebra import DualCoalgebra, FiniteDga, Vec
from .errors import InputError, ModelInconsistency, UnsupportedInput
from .gca import FreeGca, GcaPresentation, Poly, basis_in_degree, substitute

MAX_KEPT_DEGREE = 3


def tau(n: int) -> int:
    return (n + 1) // 2


def tau_sign(n: int) -> int:
    return -1 if tau(n) % 2 else 1


@dataclass(frozen=True)
class MixedGenerator:
    v: str
    j: int
    label: str
    degree: int

    @property
    def name(self) -> str:
        return f"{self.v}@{self.label}"


def build_mixed_generators(target: GcaPresentation | FreeGca, B: FiniteDga,
                           degrees: Sequence[int] | None = None) -> list[MixedGenerator]:
    """All v ⊗ b_* (optionally only those whose degree is in ``degrees``).

    Sorted by degree; inside a degree the generators paired with the dual of
    the unit come last, so that linear relations eliminate the others first.
    """
    alg = target.alg if isinstance(target, GcaPresentation) else target
    wanted = None if degrees is None else set(degrees)
    out = []
    for vi, g in enumerate(alg.generators):
        for j in range(B.dim):
            deg = g.degree - B.degrees[j]
            if wanted is None or deg in wanted:
                out.append((deg, j == B.unit, vi, j, MixedGenerator(g.name, j, B.labels[j], deg)))
    out.sort(key=lambda t: t[:4])
    return [t[-1] for t in out]


class _LazyDifferential(Mapping):
    """Mapping name -> δ(name), computed on first access."""

    def __init__(self, names: Sequence[str], compute, allowed=None):
        self._names = list(names)
        self._compute = compute
        self._allowed = allowed
        self._cache: dict[str, Poly] = {}

    def __getitem__(self, name: str) -> Poly:
        if name not in self._cache:
            if self._allowed is not None and not self._allowed(name):
                raise ModelInconsistency(f"differential of {name} is outside the computed range")
            self._cache[name] = self._compute(name)
        return self._cache[name]

    def get(self, name, default=None):
        if name not in self._names_set:
            return default
        return self[name]

    @property
    def _names_set(self):
        s = getattr(self, "_ns", None)
        if s is None:
            s = self._ns = set(self._names)
        return s

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __len__(self) -> int:
        return len(self._names)


class AmbientModel:
    """∧(V ⊗ B_*) with its differential and the evaluation data u."""

    def __init__(self, target: GcaPresentation, B: FiniteDga, eta: Mapping[str, Vec]):
        problems = B.check_dga_map(target, eta)
        if problems:
            raise InputError("η is not a DGA map: " + "; ".join(problems))
        self.target = target
        self.algebra = B
        self.coalgebra = DualCoalgebra(B)
        self.eta = {name: dict(eta.get(name, {})) for name in target.alg.names}
        self.generators = build_mixed_generators(target, B)
        self.by_name = {g.name: g for g in self.generators}
        self.by_pair = {(g.v, g.j): g for g in self.generators}
        self.alg = FreeGca([(g.name, g.degree) for g in self.generators])
        self.presentation = GcaPresentation(
            self.alg, _LazyDifferential([g.name for g in self.generators],
                                        lambda n: delta_on_generator(self, self.by_name[n])),
            name="ambient", validate=False)

    def gen(self, v: str, j: int) -> Poly:
        return self.alg.gen(self.by_pair[(v, j)].name)

    def delta(self, name: str) -> Poly:
        return self.presentation.differential[name]

    def u_value(self, g: MixedGenerator) -> Fraction:
        """Evaluation of a degree zero generator."""
        if g.degree != 0:
            raise ValueError("u is only defined on degree zero generators")
        vdeg = self.target.alg.degree_of(g.v)
        return tau_sign(vdeg) * self.eta[g.v].get(g.j, Fraction(0))


def delta_on_generator(amb: AmbientModel, g: MixedGenerator) -> Poly:
    """δ(v ⊗ e) in the ambient algebra, e = b_j*.

    Sum over the monomials v_1⋯v_m of d(v) of the Koszul-signed pairing of
    the factors with Δ^(m-1)(e), plus the dual-differential term.
    """
    target, B, coalg = amb.target, amb.algebra, amb.coalgebra
    valg = target.alg
    bdeg = B.degrees
    j = g.j
    sj = tau_sign(bdeg[j])
    out = amb.alg.zero()
    dv = target.d_gen(valg.index[g.v])
    for mono, c in dv.terms.items():
        factors = [i for i, e in mono for _ in range(e)]
        m = len(factors)
        if m == 0:
            raise InputError(f"d({g.v}) has a constant term")
        for J, lam in coalg.iterated_coproduct(j, m - 1).items():
            sign = sj
            eps = 0
            acc = 0
            term = amb.alg.one()
            for vi, bj in zip(factors, J):
                xdeg = valg.generators[vi].degree - bdeg[bj]
                eps += acc * xdeg
                acc += bdeg[bj]
                sign *= tau_sign(bdeg[bj])
                term = term * amb.gen(valg.generators[vi].name, bj)
                if not term.terms:
                    break
            if not term.terms:
                continue
            if eps % 2:
                sign = -sign
            out = out + term.scale(c * lam * sign)
    # dual differential: -s_j Σ_i s_i (-1)^{|v|-|b_i|} <b_j*, d b_i> v⊗b_i*
    vdeg = valg.degree_of(g.v)
    for i, x in coalg._pullback[j].items():
        sign = -sj * tau_sign(bdeg[i]) * (-1 if (vdeg - bdeg[i]) % 2 else 1)
        out = out + amb.gen(g.v, i).scale(sign * x)
    return out


@dataclass
class H1Basis:
    """Basis of H¹ as cocycles in the reduced degree one space."""
    names: list[str]
    vectors: list[list[Fraction]]
    polys: list[Poly]
    degree_one: list[str]

    @property
    def dimension(self) -> int:
        return len(self.names)

    def coordinates(self, p: Poly) -> list[Fraction]:
        """Coordinates of a degree one cocycle in this basis."""
        vec = [p.coefficient(((p.alg.index[n], 1),)) for n in self.degree_one]
        extra = [m for m in p.terms if not (len(m) == 1 and m[0][1] == 1
                                            and p.alg.generators[m[0][0]].name in set(self.degree_one))]
        if extra:
            raise ValueError(f"{p} is not a degree one element")
        coords = linalg.solve_in_span(self.vectors, vec)
        if coords is None:
            raise ValueError(f"{p} is not a cocycle")
        return coords


class BsModel:
    """The reduced model (E/M_u, δ) in generator degrees one to three."""

    def __init__(self, amb: AmbientModel):
        self.ambient = amb
        gens = amb.generators
        self.u: dict[str, Fraction] = {g.name: amb.u_value(g) for g in gens if g.degree == 0}
        pos_gens = [g for g in gens if 1 <= g.degree <= MAX_KEPT_DEGREE]
        self.positive = FreeGca([(g.name, g.degree) for g in pos_gens])
        images0: list[Poly | None] = []
        for g in gens:
            if g.degree < 0 or g.degree > MAX_KEPT_DEGREE:
                images0.append(None)
            elif g.degree == 0:
                val = self.u[g.name]
                images0.append(self.positive.const(val) if val else None)
            else:
                images0.append(self.positive.gen(g.name))
        self._images0 = images0

        # δ of degree -1 generators must evaluate to zero
        for g in gens:
            if g.degree == -1:
                r = substitute(amb.delta(g.name), images0, self.positive)
                if r.terms:
                    raise ModelInconsistency(f"u(δ({g.name})) = {r} != 0")

        deg1 = [g.name for g in pos_gens if g.degree == 1]
        col = {n: k for k, n in enumerate(deg1)}
        rows = []
        self.relation_sources: list[str] = []
        for g in gens:
            if g.degree != 0:
                continue
            r = substitute(amb.delta(g.name), images0, self.positive)
            if not r.terms:
                continue
            row = [Fraction(0)] * len(deg1)
            for mono, c in r.terms.items():
                if len(mono) != 1 or mono[0][1] != 1:
                    raise ModelInconsistency(f"relation from δ({g.name}) is not linear: {r}")
                row[col[self.positive.generators[mono[0][0]].name]] = c
            rows.append(row)
            self.relation_sources.append(g.name)
        red, pivots = linalg.rref(rows, len(deg1)) if rows else ([], [])
        self.relations = red
        self.eliminated = [deg1[p] for p in pivots]
        pivot_set = set(pivots)
        kept1 = [deg1[k] for k in range(len(deg1)) if k not in pivot_set]
        higher = [(g.name, g.degree) for g in pos_gens if g.degree >= 2]
        self.quotient = FreeGca([(n, 1) for n in kept1] + higher)
        q = self.quotient
        images1: list[Poly] = []
        pivot_row = {p: r for r, p in zip(red, pivots)}
        for g in pos_gens:
            if g.degree == 1 and col[g.name] in pivot_set:
                row = pivot_row[col[g.name]]
                img = q.zero()
                for k, c in enumerate(row):
                    if c and k not in pivot_set:
                        img = img + q.gen(deg1[k]).scale(-c)
                images1.append(img)
            else:
                images1.append(q.gen(g.name))
        self._images = [None if im is None else substitute(im, images1, q) for im in images0]
        self.degree_one = kept1
        self.reduced = GcaPresentation(
            q, _LazyDifferential(q.names, self._reduced_delta,
                                 allowed=lambda n: q.degree_of(n) <= 2),
            name="E/M_u", validate=False)

    # -- reduction ------------------------------------------------------
    def reduce(self, p: Poly) -> Poly:
        """Image of an ambient element of degree at most three in E/M_u."""
        if p.alg != self.ambient.alg:
            raise InputError("element is not in the ambient algebra")
        if p.terms and max(p.degrees()) > MAX_KEPT_DEGREE:
            raise UnsupportedInput("reduction is computed in degrees up to three only")
        return substitute(p, self._images, self.quotient)

    def reduce_generator(self, name: str) -> Poly:
        return self.reduce(self.ambient.alg.gen(name))

    def _reduced_delta(self, name: str) -> Poly:
        return self.reduce(self.ambient.delta(name))

    def delta(self, name: str) -> Poly:
        """Reduced δ on a retained generator of degree one or two."""
        return self.reduced.differential[name]

    # -- degree one -----------------------------------------------------
    def delta_matrix(self) -> tuple[list[str], list[tuple], linalg.Matrix]:
        """Matrix of δ from (E/M_u)^1 to (E/M_u)^2 (rows: degree two monomials)."""
        q = self.quotient
        basis2 = basis_in_degree(q, 2, cap=2)
        pos = {m: r for r, m in enumerate(basis2)}
        mat = [[Fraction(0)] * len(self.degree_one) for _ in basis2]
        for c, name in enumerate(self.degree_one):
            for m, x in self.delta(name).terms.items():
                mat[pos[m]][c] = x
        return self.degree_one, basis2, mat

    def check_delta_squared(self) -> list[str]:
        """Retained generators of degree one with δδ != 0."""
        return [n for n in self.degree_one if self.reduced.d(self.delta(n)).terms]


def reduce_mod_Mu(amb: AmbientModel) -> BsModel:
    return BsModel(amb)


def build_bs_model(target: GcaPresentation, B: FiniteDga, eta: Mapping[str, Vec]) -> BsModel:
    return BsModel(AmbientModel(target, B, eta))


def h1_aut1(model: BsModel) -> H1Basis:
    """Degree one cocycles of E/M_u; there are no degree one coboundaries."""
    names, _, mat = model.delta_matrix()
    n = len(names)
    kernel = linalg.nullspace(mat, n) if mat else [
        [Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    free = linalg.free_columns(mat, n) if mat else list(range(n))
    q = model.quotient
    polys = []
    for v in kernel:
        p = q.zero()
        for k, c in enumerate(v):
            if c:
                p = p + q.gen(names[k]).scale(c)
        polys.append(p)
    return H1Basis([names[f] for f in free], kernel, polys, list(names))


# -- evaluation map ----------------------------------------------------------

Tensor = dict[int, Poly]


def _tensor_add(a: Tensor, b: Tensor) -> Tensor:
    out = dict(a)
    for j, p in b.items():
        s = out[j] + p if j in out else p
        if s.terms:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def tensor_mul(model: BsModel, a: Tensor, b: Tensor) -> Tensor:
    """Product in (E/M_u) ⊗ B with the Koszul sign (-1)^{|b_j||q|}."""
    B = model.ambient.algebra
    out: Tensor = {}
    for j, p in a.items():
        for k, q in b.items():
            prod = B.mul_basis(j, k)
            if not prod:
                continue
            qd = q.degree() or 0
            sign = -1 if (B.degrees[j] * qd) % 2 else 1
            pq = (p * q).scale(sign)
            if not pq.terms:
                continue
            out = _tensor_add(out, {l: pq.scale(c) for l, c in prod.items()})
    return out


def tensor_d(model: BsModel, a: Tensor) -> Tensor:
    """D(p ⊗ b) = δp ⊗ b + (-1)^{|p|} p ⊗ d b."""
    B = model.ambient.algebra
    out: Tensor = {}
    for j, p in a.items():
        dp = model.reduced.d(p)
        if dp.terms:
            out = _tensor_add(out, {j: dp})
        db = B.diff.get(j)
        if db:
            sign = -1 if (p.degree() or 0) % 2 else 1
            out = _tensor_add(out, {l: p.scale(sign * c) for l, c in db.items()})
    return out


def ev_model(model: BsModel, x: str | Poly) -> Tensor:
    """Model of the evaluation map on a generator name or a polynomial of ∧V.

    Returns a map from basis index of B to the component in E/M_u.
    """
    amb = model.ambient
    B = amb.algebra
    valg = amb.target.alg
    if isinstance(x, str):
        if valg.degree_of(x) > MAX_KEPT_DEGREE:
            raise UnsupportedInput("evaluation model computed for generators of degree <= 3")
        out: Tensor = {}
        for j in range(B.dim):
            if valg.degree_of(x) - B.degrees[j] < 0:
                continue
            p = model.reduce(amb.gen(x, j)).scale(tau_sign(B.degrees[j]))
            if p.terms:
                out[j] = p
        return out
    if x.alg != valg:
        raise InputError("element is not in the target model")
    total: Tensor = {}
    q = model.quotient
    for mono, c in x.terms.items():
        acc: Tensor = {B.unit: q.const(c)}
        for i, e in mono:
            img = ev_model(model, valg.generators[i].name)
            for _ in range(e):
                acc = tensor_mul(model, acc, img)
        total = _tensor_add(total, acc)
    return total


def ev_star(model: BsModel, x: str | Poly) -> Poly:
    """Component of the evaluation model along the unit of B (the map ev^*)."""
    t = ev_model(model, x)
    return t.get(model.ambient.algebra.unit, model.quotient.zero())
