"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Rank goes through the
fraction-free integer kernel; kernels, solutions and inverses through
reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .ratpoly import to_fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def as_matrix(rows) -> Matrix:
    return [[to_fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def _integer_rows(a: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in a:
        row = [to_fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (d // x.denominator) for x in row])
    return out


def rank(a: Sequence[Sequence]) -> int:
    if not a or not len(a[0]):
        return 0
    return kernels.rank_int(_integer_rows(a))


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    return kernels.rref(as_matrix(a))


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][free]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` (free variables set to zero), or ``None``."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(as_matrix(a), (to_fraction(x) for x in b))]
    r, pivots = kernels.rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][n]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(as_matrix(a), identity(n))]
    r, pivots = kernels.rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)
