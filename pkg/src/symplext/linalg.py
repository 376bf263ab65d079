"""Exact linear algebra over the rationals.

Matrices are lists of rows, entries are :class:`fractions.Fraction`.
Everything here is small and dense; the inputs never exceed a few hundred
columns.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    out = [[Fraction(x) for x in row] for row in rows]
    if ncols is not None and any(len(r) != ncols for r in out):
        raise ValueError("ragged matrix")
    return out


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the reduced matrix and the pivot columns.
    """
    m = as_matrix(rows, ncols)
    if not m:
        return [], []
    width = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0}, one vector per free column.

    The vector attached to free column ``f`` has a 1 in position ``f`` and
    zeros in every other free position, so the basis is canonical.
    """
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def free_columns(rows: Sequence[Sequence], ncols: int) -> list[int]:
    pivots = set(rref(rows, ncols)[1]) if rows else set()
    return [c for c in range(ncols) if c not in pivots]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def transpose(m: Matrix, nrows_if_empty: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(nrows_if_empty)]
    return [list(c) for c in zip(*m)]


def solve_in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector | None:
    """Coordinates of ``v`` in the span of ``basis`` or None if not in the span."""
    n = len(basis)
    if n == 0:
        return [] if all(x == 0 for x in v) else None
    # augmented system: columns are basis vectors, last column is v
    rows = [[basis[j][i] for j in range(n)] + [v[i]] for i in range(len(v))]
    red, pivots = rref(rows, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return x


def in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    return solve_in_span(basis, v) is not None


def complement_in(subspace: Sequence[Sequence[Fraction]], space: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Greedy choice of vectors of ``space`` spanning a complement of ``subspace``."""
    chosen: list[Vector] = []
    current = [list(map(Fraction, v)) for v in subspace]
    r = rank(current) if current else 0
    for v in space:
        trial = current + [list(v)]
        rt = rank(trial)
        if rt > r:
            chosen.append(list(v))
            current = trial
            r = rt
    return chosen
