"""Finite-dimensional coefficient DGAs and their dual coalgebras.

A :class:`FiniteDga` carries an explicit homogeneous basis, a sparse
multiplication table of structure constants and a differential.  Its dual
:class:`DualCoalgebra` lives in non-positive degrees; the coproduct pairs
without signs, ``<D(e), x ⊗ y> = <e, x y>``, and the dual differential is
``(d e)(x) = -(-1)^{|e|} e(d x)``.

Vectors over a basis are plain ``dict[int, Fraction]`` keyed by basis index.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from . import linalg
from .errors import InputError, ModelInconsistency, UnsupportedInput
from .gca import FreeGca, GcaPresentation, Poly, apply_d

Vec = dict[int, Fraction]


def vadd(u: Mapping[int, Fraction], v: Mapping[int, Fraction], c: Fraction | int = 1) -> Vec:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(v: Mapping[int, Fraction], c: Fraction | int) -> Vec:
    if c == 0:
        return {}
    return {k: x * c for k, x in v.items()}


def _clean(v: Mapping[int, Fraction]) -> Vec:
    return {k: Fraction(x) for k, x in v.items() if x != 0}


class FiniteDga:
    """Finite-dimensional commutative DGA with a chosen homogeneous basis."""

    def __init__(self, labels: Sequence[str], degrees: Sequence[int],
                 mult: Mapping[tuple[int, int], Mapping[int, Fraction]],
                 diff: Mapping[int, Mapping[int, Fraction]] | None = None,
                 unit: int = 0, name: str | None = None, validate: bool = True):
        if len(labels) != len(degrees):
            raise InputError("labels and degrees differ in length")
        self.labels = tuple(labels)
        self.degrees = tuple(int(d) for d in degrees)
        if any(d < 0 for d in self.degrees):
            raise InputError("coefficient algebras live in non-negative degrees")
        self.unit = unit
        self.name = name
        self.mult: dict[tuple[int, int], Vec] = {}
        for key, val in mult.items():
            cv = _clean(val)
            if cv:
                self.mult[key] = cv
        self.diff: dict[int, Vec] = {}
        for i, val in (diff or {}).items():
            cv = _clean(val)
            if cv:
                self.diff[i] = cv
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InputError("duplicate basis labels")
        if validate:
            problems = self.check()
            if problems:
                raise ModelInconsistency("invalid coefficient algebra: " + "; ".join(problems[:5]))

    # -- access ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"no basis element labelled {label!r}") from None

    def top_degree(self) -> int:
        return max(self.degrees)

    def basis_in_degree(self, n: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == n]

    def mul_basis(self, i: int, j: int) -> Vec:
        return self.mult.get((i, j), {})

    def mul(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.mult.get((i, j))
                if prod:
                    out = vadd(out, prod, a * b)
        return out

    def d(self, v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            dv = self.diff.get(i)
            if dv:
                out = vadd(out, dv, a)
        return out

    def vector_str(self, v: Mapping[int, Fraction]) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append(f"{c}*{self.labels[k]}" if c != 1 else self.labels[k])
        return " + ".join(parts)

    # -- validation -----------------------------------------------------
    def check(self) -> list[str]:
        """Report of violated DGA axioms; empty when the table is valid."""
        problems = []
        n = self.dim
        deg = self.degrees
        e = {self.unit: Fraction(1)}
        if deg[self.unit] != 0:
            problems.append("unit is not in degree 0")
        for i in range(n):
            b = {i: Fraction(1)}
            if self.mul(e, b) != b or self.mul(b, e) != b:
                problems.append(f"unit does not act as identity on {self.labels[i]}")
        for (i, j), prod in self.mult.items():
            for k in prod:
                if deg[k] != deg[i] + deg[j]:
                    problems.append(f"{self.labels[i]}*{self.labels[j]} has wrong degree")
            sign = -1 if (deg[i] * deg[j]) % 2 else 1
            if self.mult.get((j, i), {}) != vscale(prod, sign):
                problems.append(f"{self.labels[i]}*{self.labels[j]} violates graded commutativity")
        for i in range(n):
            for j in range(n):
                left = self.mult.get((i, j))
                for k in range(n):
                    lhs = self.mul(left, {k: Fraction(1)}) if left else {}
                    right = self.mult.get((j, k))
                    rhs = self.mul({i: Fraction(1)}, right) if right else {}
                    if lhs != rhs:
                        problems.append(
                            f"associativity fails on ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for i, dv in self.diff.items():
            if any(deg[k] != deg[i] + 1 for k in dv):
                problems.append(f"d({self.labels[i]}) has wrong degree")
            if self.d(dv):
                problems.append(f"d∘d({self.labels[i]}) != 0")
        for i in range(n):
            for j in range(n):
                lhs = self.d(self.mul_basis(i, j))
                sign = -1 if deg[i] % 2 else 1
                rhs = vadd(self.mul(self.diff.get(i, {}), {j: Fraction(1)}),
                           self.mul({i: Fraction(1)}, self.diff.get(j, {})), sign)
                if lhs != rhs:
                    problems.append(f"Leibniz fails on ({self.labels[i]},{self.labels[j]})")
        return problems

    # -- maps from free algebras ---------------------------------------
    def evaluate(self, p: Poly, images: Mapping[str, Mapping[int, Fraction]]) -> Vec:
        """Image of ``p`` under the algebra map given on generator names."""
        gens = p.alg.generators
        out: Vec = {}
        for mono, c in p.terms.items():
            acc: Vec = {self.unit: Fraction(c)}
            for i, e in mono:
                img = images.get(gens[i].name, {})
                for _ in range(e):
                    acc = self.mul(acc, img)
                    if not acc:
                        break
                if not acc:
                    break
            out = vadd(out, acc)
        return out

    def check_dga_map(self, pres: GcaPresentation, images: Mapping[str, Mapping[int, Fraction]]) -> list[str]:
        """Report generators where the map fails to commute with d or to preserve degree."""
        problems = []
        for i, g in enumerate(pres.alg.generators):
            img = images.get(g.name, {})
            if any(self.degrees[k] != g.degree for k in img):
                problems.append(f"image of {g.name} has wrong degree")
            lhs = self.evaluate(pres.d_gen(i), images)
            rhs = self.d(img)
            if lhs != rhs:
                problems.append(f"map does not commute with d on {g.name}")
        return problems

    # -- constructors ---------------------------------------------------
    @classmethod
    def ground(cls) -> "FiniteDga":
        return cls(["1"], [0], {(0, 0): {0: Fraction(1)}}, name="Q")

    @classmethod
    def exterior(cls, names: Sequence[str], degree: int = 1) -> "FiniteDga":
        """Exterior algebra on odd generators with zero differential."""
        if degree % 2 == 0:
            raise InputError("exterior generators must have odd degree")
        alg = FreeGca([(n, degree) for n in names])
        return cls.from_free(GcaPresentation(alg), name="Λ(" + ",".join(names) + ")")

    @classmethod
    def truncated_polynomial(cls, name: str, degree: int, top_power: int) -> "FiniteDga":
        """Q[x]/(x^(top_power+1)) with |x| = degree even and zero differential."""
        if degree % 2 or degree <= 0:
            raise InputError("truncated polynomial generator must have positive even degree")
        labels = ["1"] + [name if p == 1 else f"{name}^{p}" for p in range(1, top_power + 1)]
        degrees = [degree * p for p in range(top_power + 1)]
        mult = {(i, j): {i + j: Fraction(1)} for i in range(top_power + 1)
                for j in range(top_power + 1) if i + j <= top_power}
        return cls(labels, degrees, mult, name=f"Q[{name}]/({name}^{top_power + 1})")

    @classmethod
    def from_free(cls, pres: GcaPresentation, name: str | None = None) -> "FiniteDga":
        """The free algebra itself, when it is finite dimensional (all generators odd)."""
        alg = pres.alg
        if any(g.degree <= 0 or g.degree % 2 == 0 for g in alg.generators):
            raise UnsupportedInput("only free algebras on odd positive-degree generators are finite")
        n = len(alg)
        monos: list[tuple[tuple[int, int], ...]] = []
        for r in range(n + 1):
            for combo in combinations(range(n), r):
                monos.append(tuple((i, 1) for i in combo))
        monos.sort(key=lambda m: (alg.mono_degree(m), m))
        pos = {m: k for k, m in enumerate(monos)}
        labels = [alg.mono_str(m) for m in monos]
        degrees = [alg.mono_degree(m) for m in monos]
        mult = {}
        for a, ma in enumerate(monos):
            for b, mb in enumerate(monos):
                prod = alg.monomial(ma) * alg.monomial(mb)
                if prod.terms:
                    mult[(a, b)] = {pos[m]: c for m, c in prod.terms.items()}
        diff = {}
        for a, ma in enumerate(monos):
            dv = apply_d(pres, alg.monomial(ma))
            if dv.terms:
                diff[a] = {pos[m]: c for m, c in dv.terms.items()}
        return cls(labels, degrees, mult, diff, unit=0, name=name or pres.name, validate=False)

    def tensor(self, other: "FiniteDga") -> "FiniteDga":
        """Graded tensor product; validity is inherited from the factors."""
        pairs = [(i, j) for i in range(self.dim) for j in range(other.dim)]
        pairs.sort(key=lambda p: (self.degrees[p[0]] + other.degrees[p[1]], p))
        pos = {p: k for k, p in enumerate(pairs)}

        def label(i, j):
            a, b = self.labels[i], other.labels[j]
            if a == "1":
                return b
            if b == "1":
                return a
            return f"{a}*{b}"

        labels = [label(i, j) for i, j in pairs]
        degrees = [self.degrees[i] + other.degrees[j] for i, j in pairs]
        mult = {}
        for (a, b), pa in self.mult.items():
            for (c, d), pb in other.mult.items():
                # (a⊗c)(b⊗d) = (-1)^{|c||b|} ab ⊗ cd
                sign = -1 if (other.degrees[c] * self.degrees[b]) % 2 else 1
                out = {}
                for k1, x in pa.items():
                    for k2, y in pb.items():
                        out[pos[(k1, k2)]] = out.get(pos[(k1, k2)], 0) + sign * x * y
                key = (pos[(a, c)], pos[(b, d)])
                mult[key] = vadd(mult.get(key, {}), out)
        diff = {}
        for (i, j) in pairs:
            out: Vec = {}
            for k, x in self.diff.get(i, {}).items():
                out = vadd(out, {pos[(k, j)]: x})
            sign = -1 if self.degrees[i] % 2 else 1
            for k, x in other.diff.get(j, {}).items():
                out = vadd(out, {pos[(i, k)]: sign * x})
            if out:
                diff[pos[(i, j)]] = out
        name = f"{self.name or '?'}⊗{other.name or '?'}"
        return FiniteDga(labels, degrees, mult, diff, unit=pos[(self.unit, other.unit)],
                         name=name, validate=False)


class DualBasis(NamedTuple):
    """Basis {a_k, b_k, c_j} of the dual with d(a_k) = b_k, d(c_j) = 0, c_0 = 1_*."""
    a: list[Vec]
    b: list[Vec]
    c: list[Vec]


class DualCoalgebra:
    """The dual coalgebra B_* of a :class:`FiniteDga` B."""

    def __init__(self, algebra: FiniteDga):
        self.algebra = algebra
        self._coproduct: list[dict[tuple[int, int], Fraction]] = [defaultdict(Fraction) for _ in range(algebra.dim)]
        for (a, c), prod in algebra.mult.items():
            for k, v in prod.items():
                self._coproduct[k][(a, c)] += v
        self._coproduct = [{key: v for key, v in cp.items() if v} for cp in self._coproduct]
        # e∘d_B for each dual basis element e = b_j*
        self._pullback: list[Vec] = [dict() for _ in range(algebra.dim)]
        for i, dv in algebra.diff.items():
            for j, x in dv.items():
                self._pullback[j][i] = self._pullback[j].get(i, 0) + x

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def degree(self, j: int) -> int:
        return -self.algebra.degrees[j]

    def label(self, j: int) -> str:
        return f"({self.algebra.labels[j]})_*"

    @staticmethod
    def _as_vec(e) -> Vec:
        return {e: Fraction(1)} if isinstance(e, int) else dict(e)

    def pair(self, e, x: Mapping[int, Fraction]) -> Fraction:
        e = self._as_vec(e)
        return sum((c * x.get(j, 0) for j, c in e.items()), Fraction(0))

    def counit(self, e) -> Fraction:
        return self._as_vec(e).get(self.algebra.unit, Fraction(0))

    def coproduct(self, e) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for j, c in self._as_vec(e).items():
            for key, v in self._coproduct[j].items():
                out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def differential(self, e) -> Vec:
        out: Vec = {}
        for j, c in self._as_vec(e).items():
            sign = 1 if self.degree(j) % 2 else -1
            out = vadd(out, self._pullback[j], sign * c)
        return out

    def iterated_coproduct(self, e, m: int) -> dict[tuple[int, ...], Fraction]:
        """Δ^(m): m-fold coproduct into m+1 tensor slots, expanding the leftmost slot."""
        if m < 0:
            raise ValueError("m must be non-negative")
        current: dict[tuple[int, ...], Fraction] = {(j,): c for j, c in self._as_vec(e).items() if c}
        for _ in range(m):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for tup, c in current.items():
                for (a, b), v in self._coproduct[tup[0]].items():
                    key = (a, b) + tup[1:]
                    nxt[key] = nxt.get(key, 0) + c * v
            current = {k: v for k, v in nxt.items() if v}
        return current

    # -- law checks -----------------------------------------------------
    def check_coassoc(self) -> list[str]:
        problems = []
        for j in range(self.dim):
            left: dict[tuple[int, int, int], Fraction] = {}
            right: dict[tuple[int, int, int], Fraction] = {}
            for (a, b), v in self._coproduct[j].items():
                for (x, y), w in self._coproduct[a].items():
                    left[(x, y, b)] = left.get((x, y, b), 0) + v * w
                for (x, y), w in self._coproduct[b].items():
                    right[(a, x, y)] = right.get((a, x, y), 0) + v * w
            left = {k: v for k, v in left.items() if v}
            right = {k: v for k, v in right.items() if v}
            if left != right:
                problems.append(f"coassociativity fails on {self.label(j)}")
        return problems

    def check_counit(self) -> list[str]:
        problems = []
        u = self.algebra.unit
        for j in range(self.dim):
            cp = self._coproduct[j]
            left = _clean({b: v for (a, b), v in cp.items() if a == u})
            right = _clean({a: v for (a, b), v in cp.items() if b == u})
            if left != {j: 1} or right != {j: 1}:
                problems.append(f"counit law fails on {self.label(j)}")
        return problems

    def check_d_squared(self) -> list[str]:
        return [f"d∘d != 0 on {self.label(j)}" for j in range(self.dim)
                if self.differential(self.differential(j))]

    def dual_basis_decomposition(self) -> DualBasis:
        """Split B_* into contractible pairs (a_k, b_k) and cycles c_j, per degree."""
        alg = self.algebra
        a_list: list[Vec] = []
        b_list: list[Vec] = []
        c_list: list[Vec] = []
        for n in sorted(set(alg.degrees)):
            idx = alg.basis_in_degree(n)          # dual degree -n
            lower = alg.basis_in_degree(n - 1)    # dual degree -n+1, target of d_*
            # matrix of d_*: columns = idx, rows = lower
            rows = [[self.differential(j).get(i, Fraction(0)) for j in idx] for i in lower]
            full = [[Fraction(int(r == c)) for c in range(len(idx))] for r in range(len(idx))]
            kernel = linalg.nullspace(rows, len(idx)) if rows else full
            preimages = linalg.complement_in(kernel, full)
            for v in preimages:
                av = {idx[t]: x for t, x in enumerate(v) if x}
                a_list.append(av)
                b_list.append(self.differential(av))
            # cycles modulo boundaries coming from degree n+1
            upper = alg.basis_in_degree(n + 1)
            bdry = []
            for j in upper:
                img = self.differential(j)
                if img:
                    bdry.append([img.get(i, Fraction(0)) for i in idx])
            unit_first = sorted(kernel, key=lambda v: 0 if (alg.unit in idx and v[idx.index(alg.unit)] != 0) else 1)
            for v in linalg.complement_in(bdry, unit_first):
                c_list.append({idx[t]: x for t, x in enumerate(v) if x})
        c_list.sort(key=lambda v: 0 if v == {alg.unit: 1} else 1)
        return DualBasis(a_list, b_list, c_list)


def dualize(B: FiniteDga) -> DualCoalgebra:
    return DualCoalgebra(B)


@dataclass(frozen=True)
class QuasiTarget:
    """A finite Poincaré duality algebra C with a quasi-isomorphism η: ∧Z → C."""
    algebra: FiniteDga
    eta: dict[str, Vec]
    top_degree: int


def pd_quasi_target(zpart: GcaPresentation, topdeg: int | None = None) -> QuasiTarget:
    """Finite Poincaré duality replacement for the supported simply-connected parts.

    Supported: the trivial algebra, and ∧(β, y) with |β| = 2, dβ = 0 and
    dy = c·β^(m+1), c ≠ 0, which maps to Q[β]/(β^(m+1)) with η(y) = 0.
    """
    alg = zpart.alg
    if len(alg) == 0:
        if topdeg not in (None, 0):
            raise UnsupportedInput("trivial part has top degree 0")
        return QuasiTarget(FiniteDga.ground(), {}, 0)
    evens = [g for g in alg.generators if g.degree % 2 == 0]
    odds = [g for g in alg.generators if g.degree % 2 == 1]
    if len(evens) != 1 or len(odds) != 1 or evens[0].degree != 2:
        raise UnsupportedInput(
            "automatic Poincaré duality replacement supports only ∧(β, y) with |β| = 2, dy = c·β^(m+1)")
    beta, y = evens[0], odds[0]
    if zpart.d_gen(alg.index[beta.name]).terms:
        raise UnsupportedInput(f"{beta.name} must be a cocycle")
    dy = zpart.d_gen(alg.index[y.name])
    bi = alg.index[beta.name]
    if len(dy.terms) != 1:
        raise UnsupportedInput(f"d({y.name}) must be a nonzero multiple of a power of {beta.name}")
    (mono, coeff), = dy.terms.items()
    if len(mono) != 1 or mono[0][0] != bi or mono[0][1] < 2:
        raise UnsupportedInput(f"d({y.name}) must be c·{beta.name}^(m+1) with m >= 1")
    m = mono[0][1] - 1
    if topdeg is not None and topdeg != 2 * m:
        raise UnsupportedInput(f"top degree {topdeg} does not match 2m = {2 * m}")
    C = FiniteDga.truncated_polynomial(beta.name, 2, m)
    eta = {beta.name: {C.index(beta.name): Fraction(1)}, y.name: {}}
    problems = C.check_dga_map(zpart, eta)
    if problems:
        raise ModelInconsistency("; ".join(problems))
    return QuasiTarget(C, eta, 2 * m)


def poincare_duality_defects(C: FiniteDga, top: int) -> list[str]:
    """Check that C^top is one-dimensional and C^i x C^(top-i) -> C^top is perfect."""
    problems = []
    top_basis = C.basis_in_degree(top)
    if len(top_basis) != 1:
        return [f"top degree {top} has dimension {len(top_basis)}"]
    if any(d > top for d in C.degrees):
        problems.append("elements above the top degree")
    t = top_basis[0]
    for i in range(top + 1):
        left = C.basis_in_degree(i)
        right = C.basis_in_degree(top - i)
        if len(left) != len(right):
            problems.append(f"dim C^{i} != dim C^{top - i}")
            continue
        if not left:
            continue
        mat = [[C.mul_basis(a, b).get(t, Fraction(0)) for b in right] for a in left]
        if linalg.rank(mat) != len(left):
            problems.append(f"pairing degenerate in degree {i}")
    return problems
