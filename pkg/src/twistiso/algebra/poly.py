"""Dense univariate polynomials in the spectral parameter.

Coefficients are usually :class:`~fractions.Fraction`, but any commutative
ring element supporting ``+ - *`` and comparison with ``0`` works for the
ring operations.  Division with remainder needs a field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import NonDivisible
from .rational import coerce, fmt

__all__ = ["UniPoly", "exact_div", "rational_roots"]


def _is_zero(c) -> bool:
    return c == 0


def _render_coeff(c) -> str:
    if isinstance(c, (int, Fraction)):
        return fmt(c)
    return f"({c})"


class UniPoly:
    """Polynomial ``sum(c[k] * l**k)`` with trailing zeros trimmed."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [coerce(x) for x in coeffs]
        while c and _is_zero(c[-1]):
            c.pop()
        self._c = tuple(c)

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, a) -> "UniPoly":
        return cls([a])

    @classmethod
    def monomial(cls, k: int, a=1) -> "UniPoly":
        return cls([0] * k + [a])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "UniPoly":
        """Monic polynomial ``prod(l - r)``."""
        out = cls([1])
        for r in roots:
            out = out * cls([-coerce(r), 1])
        return out

    # inspection ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self):
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int):
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    # arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        if not isinstance(other, UniPoly) and not _scalar_like(other):
            return NotImplemented
        o = self._lift(other)
        n = max(len(self._c), len(o._c))
        return UniPoly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self._c)

    def __sub__(self, other):
        if not isinstance(other, UniPoly) and not _scalar_like(other):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if not _scalar_like(other):
                return NotImplemented
            other = coerce(other)
            return UniPoly(c * other for c in self._c)
        if not self._c or not other._c:
            return UniPoly()
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if _is_zero(a):
                continue
            for j, b in enumerate(other._c):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def scale(self, a) -> "UniPoly":
        return self * a

    def __truediv__(self, a):
        """Division by a scalar."""
        if isinstance(a, UniPoly):
            return NotImplemented
        a = coerce(a)
        return UniPoly(c / a for c in self._c)

    def divmod(self, other: "UniPoly"):
        """Euclidean division over a field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        lead = other.leading
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c / lead
            q[k - dq] = f
            for j, b in enumerate(other._c):
                rem[k - dq + j] = rem[k - dq + j] - f * b
        return UniPoly(q), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self._c) if k > 0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self / self.leading

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    # comparison and rendering ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._c == other._c
        if _scalar_like(other):
            return self._c == UniPoly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self._c))

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if _is_zero(c):
                continue
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if neg else c
            mono = "" if k == 0 else ("l" if k == 1 else f"l^{k}")
            if not mono:
                body = _render_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_render_coeff(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def _scalar_like(x) -> bool:
    from .multipoly import MultiPoly

    return isinstance(x, (int, Fraction, float, MultiPoly)) and not isinstance(x, bool)


def exact_div(a: UniPoly, b: UniPoly) -> UniPoly:
    """Quotient ``a / b``; raises :class:`NonDivisible` on a nonzero remainder."""
    q, r = a.divmod(b)
    if not r.is_zero():
        raise NonDivisible(r)
    return q


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots with multiplicity, by deflation.

    Returns the roots found; the caller decides whether a leftover factor
    is an error.  Candidates come from the rational root theorem.
    """
    roots: list[Fraction] = []
    cur = p
    while cur.degree >= 1 and cur.coeff(0) == 0:
        roots.append(Fraction(0))
        cur = UniPoly(cur.coeffs[1:])
    if cur.degree < 1:
        return roots
    den = 1
    for c in cur.coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in cur.coeffs]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for c in sorted(cands):
        while cur.degree >= 1 and cur(c) == 0:
            roots.append(c)
            cur = exact_div(cur, UniPoly([-c, 1]))
    return roots

