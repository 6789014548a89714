"""Truncated expansions at infinity in powers of ``l**(1/2)``.

Exponents are half-integers and are stored doubled, so ``l**(3/2)`` lives
at key ``3``.  A series knows its coefficients for every exponent at or
above its truncation order; anything lower is unknown.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import NonSquareLeading, Truncated
from .poly import UniPoly
from .rational import coerce, rational_sqrt

__all__ = ["HalfSeries", "series_sqrt", "residue_at_infinity", "doubled"]


def doubled(e) -> int:
    """Map a half-integer exponent to its doubled integer key."""
    d = 2 * Fraction(e)
    if d.denominator != 1:
        raise ValueError(f"{e} is not a half-integer")
    return int(d)


def _half(d: int) -> Fraction:
    return Fraction(d, 2)


class HalfSeries:
    """``sum(c[d] * l**(d/2))`` known for every ``d >= trunc``."""

    __slots__ = ("_c", "trunc")

    def __init__(self, coeffs: Mapping[int, object], trunc: int):
        self.trunc = int(trunc)
        self._c = {int(d): coerce(c) for d, c in coeffs.items() if d >= trunc and c != 0}

    # construction -----------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Mapping, order) -> "HalfSeries":
        """Build from ``{half-integer exponent: coefficient}`` up to ``O(l**order)``."""
        return cls({doubled(e): c for e, c in terms.items()}, doubled(order))

    @classmethod
    def from_poly(cls, p: UniPoly, order) -> "HalfSeries":
        return cls({2 * k: c for k, c in enumerate(p.coeffs)}, doubled(order))

    @classmethod
    def monomial(cls, e, c, order) -> "HalfSeries":
        return cls.from_terms({e: c}, order)

    # inspection ---------------------------------------------------------
    @property
    def order(self) -> Fraction:
        """Truncation order as a half-integer exponent."""
        return _half(self.trunc)

    def terms(self) -> dict:
        """Known nonzero terms, keyed by half-integer exponent."""
        return {_half(d): c for d, c in sorted(self._c.items(), reverse=True)}

    def _top(self) -> int:
        return max(self._c) if self._c else self.trunc

    @property
    def leading_exponent(self) -> Fraction:
        if not self._c:
            raise Truncated("series has no known nonzero term")
        return _half(max(self._c))

    @property
    def leading(self):
        return self._c[max(self._c)] if self._c else Fraction(0)

    def coeff(self, e):
        return self.coeff2(doubled(e))

    def coeff2(self, d: int):
        """Coefficient at doubled exponent ``d``."""
        if d < self.trunc:
            raise Truncated(f"l^({_half(d)}) lies below the truncation order l^({self.order})")
        return self._c.get(d, Fraction(0))

    def truncate(self, order) -> "HalfSeries":
        t = doubled(order)
        if t < self.trunc:
            raise Truncated("cannot extend a series below its truncation order")
        return HalfSeries(self._c, t)

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "HalfSeries":
        if isinstance(other, HalfSeries):
            return other
        if isinstance(other, UniPoly):
            return HalfSeries({2 * k: c for k, c in enumerate(other.coeffs)}, self.trunc)
        return HalfSeries({0: other}, self.trunc)

    def __add__(self, other):
        o = self._lift(other)
        t = max(self.trunc, o.trunc)
        out = dict(self._c)
        for d, c in o._c.items():
            out[d] = out.get(d, 0) + c
        return HalfSeries(out, t)

    __radd__ = __add__

    def __neg__(self):
        return HalfSeries({d: -c for d, c in self._c.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (HalfSeries, UniPoly)):
            other = coerce(other)
            return HalfSeries({d: c * other for d, c in self._c.items()}, self.trunc)
        if isinstance(other, UniPoly):
            # exact polynomials carry no error term of their own
            oc = {2 * k: c for k, c in enumerate(other.coeffs) if c != 0}
            t = self.trunc + 2 * max(other.degree, 0)
        else:
            oc = other._c
            t = max(self._top() + other.trunc, other._top() + self.trunc)
        out: dict = {}
        for d1, c1 in self._c.items():
            for d2, c2 in oc.items():
                d = d1 + d2
                if d >= t:
                    out[d] = out.get(d, 0) + c1 * c2
        return HalfSeries(out, t)

    def __rmul__(self, other):
        return self * other

    def shift(self, e) -> "HalfSeries":
        """Multiply by ``l**e``."""
        s = doubled(e)
        return HalfSeries({d + s: c for d, c in self._c.items()}, self.trunc + s)

    def __eq__(self, other):
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._c == other._c

    def __hash__(self):
        return hash((self.trunc, tuple(sorted(self._c.items()))))

    def __repr__(self):
        return f"HalfSeries({self})"

    def __str__(self):
        parts = []
        for d, c in sorted(self._c.items(), reverse=True):
            e = _half(d)
            ex = str(e.numerator) if e.denominator == 1 else f"({e.numerator}/2)"
            parts.append(f"{c}*l^{ex}")
        parts.append(f"O(l^{self.order})")
        return " + ".join(parts)


def series_sqrt(s: HalfSeries, order) -> HalfSeries:
    """Square root to ``O(l**order)``, taking the positive leading coefficient."""
    if not s._c:
        raise NonSquareLeading("square root of a series with no known term")
    D = max(s._c)
    lead = s._c[D]
    if D % 2:
        raise NonSquareLeading(f"leading exponent {_half(D)} has no half-integer square root")
    r0 = rational_sqrt(lead) if isinstance(lead, (int, Fraction)) else None
    if r0 is None or r0 == 0:
        raise NonSquareLeading(f"leading coefficient {lead} is not a rational square")
    d0 = D // 2
    o = doubled(order)
    if d0 + o < s.trunc:
        raise Truncated("input series is too short for the requested order")
    r = [r0]
    for k in range(1, d0 - o + 1):
        acc = s.coeff2(D - k)
        for i in range(1, k):
            acc -= r[i] * r[k - i]
        r.append(acc / (2 * r0))
    return HalfSeries({d0 - k: c for k, c in enumerate(r)}, o)


def residue_at_infinity(s: HalfSeries) -> Fraction:
    """Residue of ``s(l) dl`` on the double cover ``l = z**-2``.

    Only the ``l**-1`` term survives the pullback, with weight ``-2``.
    """
    return -2 * s.coeff2(-2)
