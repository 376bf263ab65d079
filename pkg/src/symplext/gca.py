"""Free graded-commutative algebras over the rationals.

A :class:`FreeGca` is the free graded-commutative algebra on a finite list
of named generators.  Elements are :class:`Poly` objects: sparse maps from
monomials to :class:`~fractions.Fraction` coefficients.  A monomial is a
tuple of ``(generator_index, exponent)`` pairs sorted by index; the Koszul
sign produced by sorting is folded into the coefficient, and odd
generators never appear with exponent above one.

A :class:`GcaPresentation` adds a derivation differential given on the
generators.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from . import linalg
from .errors import DegreeCapExceeded, InputError, PresentationMismatch

Monomial = tuple[tuple[int, int], ...]
Scalar = Union[int, Fraction]

DEFAULT_MAX_DEGREE = 8


def max_degree() -> int:
    """Enumeration cap taken from ``RHT_MAX_DEGREE`` (default 8)."""
    raw = os.environ.get("RHT_MAX_DEGREE")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"RHT_MAX_DEGREE must be an integer, got {raw!r}") from exc


class Generator(NamedTuple):
    name: str
    degree: int

    @property
    def parity(self) -> int:
        return self.degree % 2


class FreeGca:
    """Free graded-commutative algebra on named generators.

    Generators are ordered as given; that order is the monomial order.
    """

    __slots__ = ("generators", "index", "parity", "_hash")

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = tuple(Generator(str(n), int(d)) for n, d in generators)
        index: dict[str, int] = {}
        for i, g in enumerate(gens):
            if g.name in index:
                raise InputError(f"duplicate generator name {g.name!r}")
            index[g.name] = i
        self.generators = gens
        self.index = index
        self.parity = tuple(g.degree % 2 for g in gens)
        self._hash = hash(gens)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FreeGca) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators[:6])
        more = ", ..." if len(self.generators) > 6 else ""
        return f"FreeGca({inner}{more})"

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def degree_of(self, name: str) -> int:
        return self.generators[self.index[name]].degree

    def gen(self, name: str) -> "Poly":
        try:
            i = self.index[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}") from None
        return Poly(self, {((i, 1),): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [Poly(self, {((i, 1),): Fraction(1)}) for i in range(len(self.generators))]

    def const(self, c: Scalar) -> "Poly":
        return Poly(self, {(): Fraction(c)})

    def one(self) -> "Poly":
        return self.const(1)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def monomial(self, mono: Monomial) -> "Poly":
        return Poly(self, {mono: Fraction(1)})

    def mono_degree(self, mono: Monomial) -> int:
        gens = self.generators
        return sum(gens[i].degree * e for i, e in mono)

    def mono_str(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def _mono_mul(parity: Sequence[int], m1: Monomial, m2: Monomial) -> tuple[int, Monomial] | None:
    """Product of two normal-form monomials: (sign, monomial) or None if zero."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    # odd factors of m1 at or after position i
    suffix = [0] * (len(m1) + 1)
    for k in range(len(m1) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + parity[m1[k][0]]
    out = []
    flips = 0
    i = j = 0
    while i < len(m1) and j < len(m2):
        a, ea = m1[i]
        b, eb = m2[j]
        if a < b:
            out.append(m1[i])
            i += 1
        elif b < a:
            if parity[b]:
                flips += suffix[i]
            out.append(m2[j])
            j += 1
        else:
            if parity[a]:
                return None
            out.append((a, ea + eb))
            i += 1
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return (-1 if flips & 1 else 1), tuple(out)


class Poly:
    """Element of a :class:`FreeGca` with exact rational coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeGca, terms: Mapping[Monomial, Scalar] | None = None):
        self.alg = alg
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = c if isinstance(c, Fraction) else Fraction(c)

    # -- structure ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.alg is not self.alg and other.alg != self.alg:
                raise PresentationMismatch("polynomials live in different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.const(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def degrees(self) -> set[int]:
        return {self.alg.mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous element {self}")
        return ds.pop()

    def homogeneous_part(self, n: int) -> "Poly":
        return Poly(self.alg, {m: c for m, c in self.terms.items() if self.alg.mono_degree(m) == n})

    def word_length(self) -> int:
        """Smallest number of generator factors among the terms."""
        if not self.terms:
            return 0
        return min(sum(e for _, e in m) for m in self.terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Poly(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.alg.zero()
        return Poly(self.alg, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.alg.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in sorted(self.terms.items(), key=lambda mc: _print_key(self.alg, mc[0])):
            neg = c < 0
            a = -c if neg else c
            body = self.alg.mono_str(m)
            if not m:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            pieces.append(("-" if neg else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Poly({self})"


def _print_key(alg: FreeGca, mono: Monomial):
    return (-alg.mono_degree(mono), mono)


def multiply(a: Poly, b: Poly) -> Poly:
    """Graded-commutative product with Koszul signs."""
    if a.alg is not b.alg and a.alg != b.alg:
        raise PresentationMismatch("polynomials live in different algebras")
    parity = a.alg.parity
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            r = _mono_mul(parity, m1, m2)
            if r is None:
                continue
            s, m = r
            v = c1 * c2 if s > 0 else -(c1 * c2)
            out[m] = out.get(m, 0) + v
    return Poly(a.alg, out)


def substitute(p: Poly, images: Sequence[Poly | None], target: FreeGca) -> Poly:
    """Apply the algebra map sending generator ``i`` to ``images[i]``.

    ``None`` stands for zero.  Images must respect parity for the result to
    be an algebra map; that is the caller's contract.
    """
    out = target.zero()
    power_cache: dict[tuple[int, int], Poly] = {}
    for mono, c in p.terms.items():
        term = target.const(c)
        for i, e in mono:
            img = images[i]
            if img is None or not img.terms:
                term = None
                break
            key = (i, e)
            pw = power_cache.get(key)
            if pw is None:
                pw = img if e == 1 else img ** e
                power_cache[key] = pw
            term = term * pw
            if not term.terms:
                break
        if term is not None and term.terms:
            out = out + term
    return out


class GcaPresentation:
    """A free graded-commutative algebra with a derivation differential.

    ``differential`` maps generator names to elements of degree one higher.
    Generators missing from the mapping have zero differential.  A lazy
    mapping (anything implementing ``Mapping``) is accepted; pass
    ``validate=False`` to skip the eager degree check in that case.
    """

    def __init__(self, alg: FreeGca, differential: Mapping[str, Poly] | None = None,
                 name: str | None = None, validate: bool = True):
        self.alg = alg
        self.name = name
        self.differential = differential if differential is not None else {}
        if validate:
            for gname, value in self.differential.items():
                if gname not in alg.index:
                    raise InputError(f"differential given on unknown generator {gname!r}")
                if value.alg != alg:
                    raise PresentationMismatch(f"d({gname}) lives in a different algebra")
                if value.terms:
                    if not value.is_homogeneous() or value.degree() != alg.degree_of(gname) + 1:
                        raise InputError(
                            f"d({gname}) = {value} does not have degree {alg.degree_of(gname) + 1}")

    def d_gen(self, i: int) -> Poly:
        name = self.alg.generators[i].name
        v = self.differential.get(name)
        return v if v is not None else self.alg.zero()

    def d(self, p: Poly) -> Poly:
        return apply_d(self, p)

    def __repr__(self):
        return f"GcaPresentation({self.name or ''} {self.alg!r})"


def apply_d(pres: GcaPresentation, p: Poly) -> Poly:
    """Extend the differential to ``p`` by the graded Leibniz rule."""
    alg = pres.alg
    if p.alg is not alg and p.alg != alg:
        raise PresentationMismatch("element is not in the presentation's algebra")
    gens = alg.generators
    out = alg.zero()
    for mono, c in p.terms.items():
        left_deg = 0
        for pos, (i, e) in enumerate(mono):
            dg = pres.d_gen(i)
            if dg.terms:
                left = alg.monomial(mono[:pos])
                right = alg.monomial(mono[pos + 1:])
                mid = dg if e == 1 else (alg.monomial(((i, e - 1),)) * dg).scale(e)
                term = left * mid * right
                sign = -1 if (left_deg % 2) else 1
                out = out + term.scale(c * sign)
            left_deg += gens[i].degree * e
    return out


def check_d_squared(pres: GcaPresentation) -> list[tuple[str, Poly]]:
    """Generators on which d∘d does not vanish, with the offending value."""
    report = []
    for i, g in enumerate(pres.alg.generators):
        dd = apply_d(pres, pres.d_gen(i))
        if dd.terms:
            report.append((g.name, dd))
    return report


def is_minimal(pres: GcaPresentation) -> bool:
    """True when every d(v) lies in the decomposables (no constant or linear term)."""
    for i in range(len(pres.alg)):
        dv = pres.d_gen(i)
        if any(sum(e for _, e in m) < 2 for m in dv.terms):
            return False
    return True


def basis_in_degree(alg: FreeGca | GcaPresentation, n: int, cap: int | None = None) -> list[Monomial]:
    """Monomial basis of the degree ``n`` part, in the fixed monomial order."""
    if isinstance(alg, GcaPresentation):
        alg = alg.alg
    if n < 0:
        return []
    limit = max_degree() if cap is None else cap
    if n > limit:
        raise DegreeCapExceeded(f"degree {n} exceeds the enumeration cap {limit}")
    gens = alg.generators
    if any(g.degree <= 0 for g in gens):
        raise InputError("basis enumeration needs generators of positive degree")
    out: list[Monomial] = []

    def rec(start: int, remaining: int, acc: list[tuple[int, int]]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            d = gens[i].degree
            if d > remaining:
                continue
            emax = 1 if d % 2 else remaining // d
            for e in range(1, emax + 1):
                acc.append((i, e))
                rec(i + 1, remaining - d * e, acc)
                acc.pop()

    rec(0, n, [])
    out.sort()
    return out


def differential_matrix(pres: GcaPresentation, n: int, cap: int | None = None) -> tuple[list[Monomial], list[Monomial], linalg.Matrix]:
    """Matrix of d: degree n -> degree n+1 (rows index the target basis)."""
    src = basis_in_degree(pres.alg, n, cap)
    tgt = basis_in_degree(pres.alg, n + 1, cap)
    pos = {m: r for r, m in enumerate(tgt)}
    mat = [[Fraction(0)] * len(src) for _ in tgt]
    for col, mono in enumerate(src):
        for m, c in apply_d(pres, pres.alg.monomial(mono)).terms.items():
            mat[pos[m]][col] = c
    return src, tgt, mat


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    dimension: int
    representatives: tuple[Poly, ...]
    cycle_dimension: int
    boundary_dimension: int


def cohomology(pres: GcaPresentation, n: int, cap: int | None = None) -> CohomologyGroup:
    """Exact H^n as kernel modulo image, with cocycle representatives."""
    if n < 0:
        return CohomologyGroup(n, 0, (), 0, 0)
    alg = pres.alg
    src, _, dn = differential_matrix(pres, n, cap)
    cycles = linalg.nullspace(dn, len(src)) if src else []
    if n == 0:
        boundaries: list[list[Fraction]] = []
    else:
        prev_src, _, dprev = differential_matrix(pres, n - 1, cap)
        cols = linalg.transpose(dprev, len(src)) if prev_src else []
        boundaries = [list(c) for c in cols if any(x != 0 for x in c)]
    reps = linalg.complement_in(boundaries, cycles)
    polys = tuple(Poly(alg, {m: c for m, c in zip(src, v)}) for v in reps)
    bdim = linalg.rank(boundaries) if boundaries else 0
    return CohomologyGroup(n, len(reps), polys, len(cycles), bdim)


def vector_of(p: Poly, basis: Sequence[Monomial]) -> list[Fraction]:
    pos = {m: i for i, m in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for m, c in p.terms.items():
        if m not in pos:
            raise ValueError(f"monomial {p.alg.mono_str(m)} not in basis")
        v[pos[m]] = c
    return v
