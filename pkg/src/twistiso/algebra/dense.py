"""Small dense exact linear algebra used by checks and coordinate changes."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import SingularDiagonal
from .rational import coerce

__all__ = ["dense_solve", "dense_inverse", "matmul", "transpose", "matrix_rank", "symplectic_form", "is_symplectic"]


def dense_solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Gaussian elimination with exact pivoting on the first nonzero entry."""
    n = len(matrix)
    a = [[coerce(x) for x in row] + [coerce(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularDiagonal(f"matrix is singular at column {col}")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def dense_inverse(matrix: Sequence[Sequence]) -> list[list]:
    n = len(matrix)
    cols = [dense_solve(matrix, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matrix_rank(rows: Sequence[Sequence]) -> int:
    a = [[coerce(x) for x in row] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def symplectic_form(g: int) -> list[list]:
    """``[[0, I], [-I, 0]]`` for coordinates ordered ``(q_1..q_g, p_1..p_g)``."""
    n = 2 * g
    om = [[Fraction(0)] * n for _ in range(n)]
    for i in range(g):
        om[i][g + i] = Fraction(1)
        om[g + i][i] = Fraction(-1)
    return om


def is_symplectic(J: Sequence[Sequence]) -> bool:
    """``J^T Omega J == Omega``."""
    om = symplectic_form(len(J) // 2)
    return matmul(matmul(transpose(J), om), J) == om
