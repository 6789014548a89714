"""Exact structured linear solvers.

Everything here works over any field-like scalar type; in practice the
inputs are :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from ..errors import CoincidentNodes, SingularDiagonal, ValidationError
from .poly import UniPoly
from .rational import coerce

__all__ = [
    "toeplitz_lower_solve",
    "toeplitz_unit_inverse_coeffs",
    "vandermonde_solve",
    "lagrange_basis",
]


def toeplitz_lower_solve(first_column: Sequence, rhs: Sequence) -> list:
    """Solve ``M x = rhs`` with ``M[i][j] = first_column[i-j]`` for ``i >= j``."""
    col = [coerce(c) for c in first_column]
    b = [coerce(c) for c in rhs]
    if len(col) != len(b):
        raise ValidationError("first column and right-hand side differ in length")
    if not col:
        return []
    if col[0] == 0:
        raise SingularDiagonal("leading diagonal entry vanishes")
    x: list = []
    for i, bi in enumerate(b):
        acc = bi
        for j in range(i):
            acc = acc - col[i - j] * x[j]
        x.append(acc / col[0])
    return x


def _compositions(total: int, parts: int):
    """Tuples ``b`` of length ``parts`` with ``sum((j+2)*b[j]) == total``."""

    def rec(j, left):
        if j == parts:
            if left == 0:
                yield ()
            return
        w = j + 2
        for bj in range(left // w + 1):
            for rest in rec(j + 1, left - w * bj):
                yield (bj,) + rest

    yield from rec(0, total)


def toeplitz_unit_inverse_coeffs(subdiagonal: Sequence) -> list:
    """Coefficients ``F_1..F_n`` of the inverse of a unit Toeplitz matrix.

    The matrix has ones on the diagonal, zeros on the first subdiagonal and
    ``tau_i`` on subdiagonal ``i+1``.  Its inverse has the same shape with
    ``F_i`` in place of ``tau_i``, given by a sum over compositions with
    multinomial weights.
    """
    tau = [coerce(t) for t in subdiagonal]
    out = []
    for i in range(1, len(tau) + 1):
        acc = Fraction(0)
        for b in _compositions(i + 1, i):
            m = sum(b)
            w = factorial(m)
            for bj in b:
                w //= factorial(bj)
            term = Fraction((-1) ** m * w)
            for j, bj in enumerate(b):
                if bj:
                    term = term * tau[j] ** bj
            acc = acc + term
        out.append(acc)
    return out


def lagrange_basis(nodes: Sequence) -> list[UniPoly]:
    """Polynomials ``l_j`` with ``l_j(nodes[i]) = [i == j]``."""
    q = [coerce(x) for x in nodes]
    for i in range(len(q)):
        for j in range(i + 1, len(q)):
            if q[i] == q[j]:
                raise CoincidentNodes(i, j)
    basis = []
    for j, qj in enumerate(q):
        num = UniPoly([1])
        den = Fraction(1)
        for m, qm in enumerate(q):
            if m != j:
                num = num * UniPoly([-qm, 1])
                den = den * (qj - qm)
        basis.append(num / den)
    return basis


def vandermonde_solve(nodes: Sequence, rhs: Sequence, transposed: bool = False) -> list:
    """Solve ``V x = rhs`` with ``V[i][j] = nodes[j]**i``.

    With ``transposed`` the system is ``V^T x = rhs``, i.e. the row for
    node ``i`` reads ``sum_k x_k nodes[i]**k = rhs[i]`` (interpolation).
    Both are solved through the Lagrange basis, no elimination needed.
    """
    b = [coerce(x) for x in rhs]
    if len(nodes) != len(b):
        raise ValidationError("nodes and right-hand side differ in length")
    ell = lagrange_basis(nodes)
    n = len(b)
    if transposed:
        return [sum((b[i] * ell[i].coeff(k) for i in range(n)), Fraction(0)) for k in range(n)]
    return [sum((b[i] * ell[j].coeff(i) for i in range(n)), Fraction(0)) for j in range(n)]
