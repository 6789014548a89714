"""Rational functions in the spectral parameter, kept in lowest terms."""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly, exact_div
from .rational import coerce

__all__ = ["RatFunc"]


class RatFunc:
    """``num / den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly([num])
        if den is None:
            den = UniPoly([1])
        elif not isinstance(den, UniPoly):
            den = UniPoly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), UniPoly([1])
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num = exact_div(num, g)
                den = exact_div(den, g)
        lead = den.leading
        self.num = num / lead
        self.den = den / lead

    @classmethod
    def pole(cls, residue, at, order: int = 1) -> "RatFunc":
        """``residue / (l - at)**order``."""
        return cls(UniPoly([residue]), UniPoly([-coerce(at), 1]) ** order)

    # inspection ---------------------------------------------------------
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def polynomial_part(self) -> UniPoly:
        return self.num.divmod(self.den)[0]

    def as_poly(self) -> UniPoly:
        """The underlying polynomial; raises when there are finite poles."""
        return exact_div(self.num, self.den)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return RatFunc(x)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            o = self._lift(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"
