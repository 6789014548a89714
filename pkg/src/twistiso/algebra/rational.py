"""Helpers around :class:`fractions.Fraction`.

Fractions are always reduced with a positive denominator, which is
exactly the canonical form we want, so no wrapper type is introduced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from ..errors import IrrationalPower

__all__ = ["Fraction", "as_rational", "coerce", "fmt", "rational_sqrt", "rational_root"]


def as_rational(x) -> Fraction:
    """Parse ints, Fractions and strings such as ``"3/4"`` or ``"-2"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def coerce(x):
    """Promote ints and strings to Fraction, pass other ring elements through.

    This lets the pipelines run over floats (for the flow demo) and over
    :class:`MultiPoly` (for symbolic elimination) with the same code.
    """
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return Fraction(x)
    return x


def fmt(x) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _int_root(n: int, k: int):
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    if k == 2:
        r = math.isqrt(n)
    else:
        # integer Newton iteration from an overestimate
        r = 1 << ((n.bit_length() + k - 1) // k)
        while True:
            nr = ((k - 1) * r + n // r ** (k - 1)) // k
            if nr >= r:
                break
            r = nr
    return r if r**k == n else None


def rational_root(x, k: int) -> Fraction:
    """Exact real ``k``-th root of a rational, or :class:`IrrationalPower`."""
    x = as_rational(x)
    if k < 1:
        raise ValueError("root index must be positive")
    num = _int_root(x.numerator, k)
    den = _int_root(x.denominator, k)
    if num is None or den is None:
        raise IrrationalPower(f"{fmt(x)} has no rational root of order {k}")
    return Fraction(num, den)


def rational_sqrt(x):
    """Non-negative rational square root, or ``None`` when irrational."""
    x = as_rational(x)
    if x < 0:
        return None
    try:
        return rational_root(x, 2)
    except IrrationalPower:
        return None
