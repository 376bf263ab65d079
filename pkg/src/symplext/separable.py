"""Torus-separable symplectic models, the detective map κ and extendability.

A separable model is ⊗_i ∧(t_i1, t_i2) ⊗ ∧Z with closed torus generators,
(∧Z)¹ = 0 and symplectic class q[β] + Σ q_i [t_i1 t_i2].  The torus part is
modelled by its own exterior algebra and ∧Z by a finite Poincaré duality
replacement, so B = ∧(t) ⊗ C.

κ sends s_iλ to the class of ev^*(t_iλ) = t_iλ@1 in H¹ of the reduced
model, which is identified with H² of the classifying space (the degree one
cocycles are exactly the transgressive classes).  A classifying map is
recorded by its values on that basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from . import linalg
from .bsmodel import BsModel, H1Basis, build_bs_model, ev_star, h1_aut1
from .coalgebra import FiniteDga, QuasiTarget, Vec, pd_quasi_target
from .errors import InputError, UnsupportedInput
from .gca import FreeGca, GcaPresentation, Poly


def torus_name(i: int, lam: int) -> str:
    return f"t{i}{lam}" if i < 10 else f"t{i}_{lam}"


@dataclass(frozen=True)
class SeparableSpec:
    presentation: GcaPresentation
    k: int
    torus_pairs: tuple[tuple[str, str], ...]
    zpart: GcaPresentation
    beta: str | None
    q: Fraction
    q_i: tuple[Fraction, ...]

    @property
    def torus_names(self) -> list[str]:
        return [n for pair in self.torus_pairs for n in pair]

    @property
    def source_names(self) -> list[str]:
        """Basis s_iλ of H¹ of the torus factor."""
        return ["s" + t[1:] for t in self.torus_names]

    def symplectic_class(self) -> Poly:
        alg = self.presentation.alg
        w = alg.zero()
        if self.beta is not None:
            w = w + alg.gen(self.beta).scale(self.q)
        for (a, b), qi in zip(self.torus_pairs, self.q_i):
            w = w + (alg.gen(a) * alg.gen(b)).scale(qi)
        return w

    def rescaled(self, q: Fraction | None = None, q_i: Sequence[Fraction] | None = None) -> "SeparableSpec":
        q = self.q if q is None else Fraction(q)
        q_i = self.q_i if q_i is None else tuple(Fraction(x) for x in q_i)
        if len(q_i) != self.k or any(x == 0 for x in q_i) or (self.beta is not None and q == 0):
            raise InputError("symplectic coefficients must be nonzero, one per torus pair")
        return SeparableSpec(self.presentation, self.k, self.torus_pairs, self.zpart, self.beta, q, q_i)

    @classmethod
    def from_presentation(cls, pres: GcaPresentation, k: int, omega: Poly | None = None) -> "SeparableSpec":
        """Split a model into its torus pairs and simply-connected part.

        The torus generators are the first 2k degree one generators, paired
        consecutively.  ``omega`` must be exactly q·β + Σ q_i t_i1 t_i2.
        """
        alg = pres.alg
        if k < 0:
            raise InputError("torus rank must be non-negative")
        deg1 = [g.name for g in alg.generators if g.degree == 1]
        if len(deg1) < 2 * k:
            raise InputError(f"torus {k} needs {2 * k} degree one generators, found {len(deg1)}")
        tnames = deg1[:2 * k]
        tset = set(tnames)
        for t in tnames:
            if pres.d_gen(alg.index[t]).terms:
                raise UnsupportedInput(f"torus generator {t} must be closed")
        zgens = [(g.name, g.degree) for g in alg.generators if g.name not in tset]
        if any(d == 1 for _, d in zgens):
            raise UnsupportedInput("the simply-connected part must have no degree one generators")
        zalg = FreeGca(zgens)
        zdiff = {}
        for name, _ in zgens:
            dv = pres.d_gen(alg.index[name])
            for mono in dv.terms:
                for i, _ in mono:
                    if alg.generators[i].name in tset:
                        raise UnsupportedInput(f"d({name}) involves torus generators; model is not separable")
            if dv.terms:
                zdiff[name] = Poly(zalg, {tuple((zalg.index[alg.generators[i].name], e) for i, e in m): c
                                          for m, c in dv.terms.items()})
        zpart = GcaPresentation(zalg, zdiff, name="Z")
        pairs = tuple((tnames[2 * i], tnames[2 * i + 1]) for i in range(k))
        zdeg2 = [n for n, d in zgens if d == 2 and not zpart.d_gen(zalg.index[n]).terms]
        if omega is None:
            beta = zdeg2[0] if len(zdeg2) == 1 else None
            if len(zdeg2) > 1:
                raise UnsupportedInput("several degree two cocycles; give the symplectic class explicitly")
            return cls(pres, k, pairs, zpart, beta, Fraction(1) if beta else Fraction(0),
                       tuple(Fraction(1) for _ in range(k)))
        if omega.alg != alg:
            raise InputError("symplectic class lives in a different algebra")
        beta, q = None, Fraction(0)
        q_i = [Fraction(0)] * k
        pair_index = {frozenset((alg.index[a], alg.index[b])): i for i, (a, b) in enumerate(pairs)}
        for mono, c in omega.terms.items():
            if len(mono) == 1 and mono[0][1] == 1 and alg.generators[mono[0][0]].name in zdeg2:
                if beta is not None:
                    raise UnsupportedInput("symplectic class must involve a single β")
                beta, q = alg.generators[mono[0][0]].name, c
                continue
            key = frozenset(i for i, _ in mono)
            if len(mono) == 2 and key in pair_index:
                a, _ = pairs[pair_index[key]]
                # omega stores t_i1 t_i2 in generator order; flip sign if pair is reversed
                sign = 1 if mono[0][0] == alg.index[a] else -1
                q_i[pair_index[key]] = c * sign
                continue
            raise UnsupportedInput(
                f"symplectic class term {alg.mono_str(mono)} is not q·β or q_i·t_i1·t_i2")
        if any(x == 0 for x in q_i):
            raise UnsupportedInput("every torus pair needs a nonzero coefficient in the symplectic class")
        if zdeg2 and beta is None:
            raise UnsupportedInput("symplectic class must contain q·β with q != 0")
        return cls(pres, k, pairs, zpart, beta, q, tuple(q_i))


def _cp_zpart(m: int) -> list[tuple[str, int]]:
    return [("b", 2), ("y", 2 * m + 1)] if m > 0 else []


def torus_cp(k: int, m: int, q: Fraction | int = 1, q_i: Sequence[Fraction | int] | None = None) -> SeparableSpec:
    """Model of T^{2k} × CP(m); m = 0 gives the torus alone."""
    if k < 0 or m < 0:
        raise InputError("k and m must be non-negative")
    tors = [(torus_name(i, lam), 1) for i in range(1, k + 1) for lam in (1, 2)]
    alg = FreeGca(tors + _cp_zpart(m))
    diff = {"y": alg.gen("b") ** (m + 1)} if m > 0 else {}
    pres = GcaPresentation(alg, diff, name=f"T^{2 * k}xCP({m})" if m else f"T^{2 * k}")
    spec = SeparableSpec.from_presentation(pres, k)
    q_i = [1] * k if q_i is None else q_i
    return spec.rescaled(q if m else 0, q_i)


def torus(k: int) -> SeparableSpec:
    return torus_cp(k, 0)


def coefficient_algebra(spec: SeparableSpec) -> tuple[FiniteDga, QuasiTarget]:
    target = pd_quasi_target(spec.zpart)
    ext = FiniteDga.exterior(spec.torus_names) if spec.k else FiniteDga.ground()
    B = ext.tensor(target.algebra) if len(target.algebra.labels) > 1 else ext
    return B, target


def separable_bs_model(spec: SeparableSpec, eta_scale: Mapping[str, Fraction] | None = None) -> BsModel:
    """Reduced model of aut₁ for a separable spec.

    ``eta_scale`` rescales η on chosen generators (η(x) ↦ c·η(x)); the
    quasi-isomorphism stays a DGA map for the supported families.
    """
    B, target = coefficient_algebra(spec)
    eta: dict[str, Vec] = {}
    for t in spec.torus_names:
        eta[t] = {B.index(t): Fraction(1)}
    for name, vec in target.eta.items():
        eta[name] = {B.index(target.algebra.labels[j]): c for j, c in vec.items()}
    if eta_scale:
        for name, c in eta_scale.items():
            if name not in eta:
                raise InputError(f"cannot rescale η on unknown generator {name!r}")
            if Fraction(c) == 0:
                raise InputError("η rescaling factors must be nonzero")
            eta[name] = {j: x * Fraction(c) for j, x in eta[name].items()}
    return build_bs_model(spec.presentation, B, eta)


@dataclass(frozen=True)
class KappaMap:
    """Matrix of κ: rows follow the W² basis, columns the s_iλ."""
    source: tuple[str, ...]
    target: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return linalg.rank(self.matrix) if self.matrix and self.source else 0

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.matrix]

    def image_names(self) -> list[str]:
        """W² basis elements on which some κ(s) has a nonzero coordinate."""
        return [t for t, row in zip(self.target, self.matrix) if any(row)]


def kappa(spec: SeparableSpec, model: BsModel | None = None, h1: H1Basis | None = None) -> KappaMap:
    model = model if model is not None else separable_bs_model(spec)
    h1 = h1 if h1 is not None else h1_aut1(model)
    cols = []
    for t in spec.torus_names:
        cols.append(h1.coordinates(ev_star(model, t)))
    rows = tuple(tuple(c[r] for c in cols) for r in range(h1.dimension))
    km = KappaMap(tuple(spec.source_names), tuple(h1.names), rows)
    if km.rank != 2 * spec.k:
        raise InputError(f"κ has rank {km.rank}, expected {2 * spec.k}")
    return km


@dataclass(frozen=True)
class ClassifyingData:
    """Linear map H²(Baut₁) → H²(B): rows over the H²(B) basis, columns over W²."""
    source: tuple[str, ...]
    target: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_values(cls, source: Sequence[str], target: Sequence[str],
                    values: Mapping[str, Mapping[str, Fraction] | Fraction | int]) -> "ClassifyingData":
        """Build from values on source basis elements.

        A value is either a map from target names to coefficients or, when
        the target is one-dimensional, a bare scalar.
        """
        source, target = tuple(source), tuple(target)
        col = {n: j for j, n in enumerate(source)}
        row = {n: i for i, n in enumerate(target)}
        mat = [[Fraction(0)] * len(source) for _ in target]
        for name, val in values.items():
            if name not in col:
                raise InputError(f"{name!r} is not a basis element of H²(Baut₁); expected one of {list(source)}")
            if not isinstance(val, Mapping):
                if len(target) != 1:
                    raise InputError("a scalar value needs a one-dimensional H²(B)")
                val = {target[0]: val}
            for tname, c in val.items():
                if tname not in row:
                    raise InputError(f"{tname!r} is not a basis element of H²(B)")
                mat[row[tname]][col[name]] = Fraction(c)
        return cls(source, target, tuple(tuple(r) for r in mat))

    @classmethod
    def zero(cls, source: Sequence[str], target: Sequence[str] = ("u",)) -> "ClassifyingData":
        return cls(tuple(source), tuple(target),
                   tuple(tuple(Fraction(0) for _ in source) for _ in target))

    def value(self, name: str) -> list[Fraction]:
        j = self.source.index(name)
        return [r[j] for r in self.matrix]


def sum_classifying(f: ClassifyingData, g: ClassifyingData) -> ClassifyingData:
    """Classifying data of the fibrewise product over a co-H-space base."""
    if f.source != g.source or f.target != g.target:
        raise InputError("classifying data are defined on different bases")
    return ClassifyingData(f.source, f.target, tuple(
        tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(f.matrix, g.matrix)))


def negate_classifying(f: ClassifyingData) -> ClassifyingData:
    return ClassifyingData(f.source, f.target, tuple(tuple(-x for x in r) for r in f.matrix))


@dataclass(frozen=True)
class Extendability:
    extendable: bool
    witness: str | None
    image: tuple[Fraction, ...]
    composite: tuple[tuple[Fraction, ...], ...]
    target: tuple[str, ...]


def composite_verdict(fmat, target, kmat, source) -> Extendability:
    """Decide whether f∘κ vanishes; on failure report the first obstructed s."""
    ncols = len(source)
    comp = tuple(tuple(sum((f_row[r] * kmat[r][c] for r in range(len(kmat))), Fraction(0))
                       for c in range(ncols)) for f_row in fmat)
    for c, s in enumerate(source):
        img = tuple(row[c] for row in comp)
        if any(img):
            return Extendability(False, s, img, comp, tuple(target))
    return Extendability(True, None, tuple(Fraction(0) for _ in target), comp, tuple(target))


def is_extendable(spec: SeparableSpec, f: ClassifyingData, model: BsModel | None = None,
                  km: KappaMap | None = None) -> Extendability:
    """The symplectic class extends iff H²(f)∘κ = 0."""
    if spec.k == 0:
        # simply-connected fibre: always extendable
        return Extendability(True, None, tuple(Fraction(0) for _ in f.target), (), f.target)
    km = km if km is not None else kappa(spec, model)
    if tuple(f.source) != km.target:
        raise InputError(f"classifying data is given on {list(f.source)}, expected the basis {list(km.target)}")
    return composite_verdict(f.matrix, f.target, km.matrix, km.source)


@dataclass(frozen=True)
class ModuliDim:
    dim_w2: int
    k: int

    @property
    def value(self) -> int:
        return self.dim_w2 - 2 * self.k


def moduli_dim_s2(spec: SeparableSpec, model: BsModel | None = None) -> ModuliDim:
    """dim W² - 2k for fibrations over S²."""
    model = model if model is not None else separable_bs_model(spec)
    return ModuliDim(h1_aut1(model).dimension, spec.k)


def binomial_dim_closed_form(k: int, m: int) -> int:
    """Σ_{s=1}^{min(m,k)} C(2k, 2s)."""
    if k < 1 or m < 1:
        raise InputError("closed form needs k >= 1 and m >= 1")
    return sum(comb(2 * k, 2 * s) for s in range(1, min(m, k) + 1))


@lru_cache(maxsize=1)
def _t2_data() -> tuple[SeparableSpec, KappaMap]:
    spec = torus(1)
    return spec, kappa(spec)


def torus_over_s2_check(a: int | Fraction, b: int | Fraction) -> bool:
    """T² with its standard form over S², classifying map given by (a, b) on W²."""
    spec, km = _t2_data()
    f = ClassifyingData.from_values(km.target, ("u",), dict(zip(km.target, (a, b))))
    return is_extendable(spec, f, km=km).extendable
