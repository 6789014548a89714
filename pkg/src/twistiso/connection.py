"""Normalized twisted connections, their spectral curve and eigenvalue data.

A connection with ``r_inf`` as pole order at infinity carries ``2*r_inf - 2``
Birkhoff times.  Its leading coefficient is nilpotent (the twist), so the
eigenvalues expand in half-integer powers of ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .algebra import (
    HalfSeries,
    Mat2,
    RatFunc,
    UniPoly,
    coerce,
    fmt,
    residue_at_infinity,
    series_sqrt,
)
from .errors import NonPolynomialDet, Truncated, ValidationError

__all__ = [
    "IrregularTimes",
    "TwistedConnection",
    "SpectralData",
    "NormalizationReport",
    "validate_normalization",
    "spectral_curve",
    "eigenvalue_series",
    "extract_birkhoff_times",
    "extract_isospectral_hams",
    "spectral_data",
    "iso_order",
    "delta_inf",
]


@dataclass(frozen=True)
class IrregularTimes:
    """Birkhoff times ``t_1 .. t_{2r-2}`` plus the deformation parameter ``hbar``."""

    r_inf: int
    t: tuple
    hbar: Any = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(coerce(x) for x in self.t))
        object.__setattr__(self, "hbar", coerce(self.hbar))
        if self.r_inf < 3:
            raise ValidationError("r_inf must be at least 3")
        if len(self.t) != 2 * self.r_inf - 2:
            raise ValidationError(f"expected {2 * self.r_inf - 2} times, got {len(self.t)}")
        if self.t[2 * self.r_inf - 4] == 0:
            raise ValidationError("t_{2r-3} = 0 is the untwisted limit and is not supported")

    @property
    def g(self) -> int:
        return self.r_inf - 3

    def T(self, k: int):
        """``t_k``, with zero outside ``1 .. 2r-2``."""
        if 1 <= k <= 2 * self.r_inf - 2:
            return self.t[k - 1]
        return Fraction(0)

    @property
    def lead(self):
        """The twist parameter ``t_{2r-3}``."""
        return self.t[2 * self.r_inf - 4]

    @classmethod
    def canonical(cls, r_inf: int, tau: Sequence = (), hbar=1) -> "IrregularTimes":
        """Canonical slice: even times 0, ``t_{2r-3} = 2`` and ``t_{2k-1} = 2 tau_{r-k-2}``."""
        g = r_inf - 3
        tau = list(tau)
        if len(tau) != g:
            raise ValidationError(f"expected {g} isomonodromic times, got {len(tau)}")
        t = [Fraction(0)] * (2 * r_inf - 2)
        t[2 * r_inf - 4] = Fraction(2)
        for j in range(1, g + 1):
            t[2 * r_inf - 2 * j - 6] = 2 * coerce(tau[j - 1])
        return cls(r_inf, tuple(t), hbar)

    def is_reduced(self) -> bool:
        return all(self.T(2 * k) == 0 for k in range(1, self.r_inf))

    def is_canonical(self) -> bool:
        r = self.r_inf
        return self.is_reduced() and self.T(2 * r - 3) == 2 and self.T(2 * r - 5) == 0

    def tau(self) -> list:
        """Isomonodromic times read off at the canonical slice."""
        return [self.T(2 * self.r_inf - 2 * j - 5) / 2 for j in range(1, self.g + 1)]

    def with_t(self, k: int, value) -> "IrregularTimes":
        t = list(self.t)
        t[k - 1] = value
        return IrregularTimes(self.r_inf, tuple(t), self.hbar)

    def shifted(self, alpha: Sequence, h) -> "IrregularTimes":
        return IrregularTimes(self.r_inf, tuple(a + h * b for a, b in zip(self.t, alpha)), self.hbar)

    def to_json(self) -> dict:
        return {"r_inf": self.r_inf, "t": [fmt(x) for x in self.t], "hbar": fmt(self.hbar)}


@dataclass(frozen=True)
class TwistedConnection:
    """Normalized representative ``L~`` with its times and optional chart of origin."""

    r_inf: int
    L: Mat2
    times: IrregularTimes
    chart: Optional[Any] = None

    def entry(self, i: int, j: int) -> RatFunc:
        return self.L[i, j]

    def poly(self, i: int, j: int) -> UniPoly:
        return self.L[i, j].as_poly()


@dataclass(frozen=True)
class SpectralData:
    y1: HalfSeries
    y2: HalfSeries
    birkhoff_times: tuple
    iso_hams: tuple

    def to_json(self, r_inf: int) -> dict:
        return {
            "r_inf": r_inf,
            "times": [fmt(x) for x in self.birkhoff_times],
            "iso_hams": [fmt(x) for x in self.iso_hams],
        }


@dataclass
class NormalizationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[str]:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


def _block(polys, k: int) -> tuple:
    return tuple(p.coeff(k) for p in polys)


def validate_normalization(Lt: TwistedConnection) -> NormalizationReport:
    """Check every structural invariant of the normalized representative."""
    rep = NormalizationReport()
    tm = Lt.times
    r = Lt.r_inf
    g = r - 3
    if tm.lead == 0:
        rep.violations.append("t_{2r-3} vanishes")
    polys = []
    for (i, j), e in zip(((0, 0), (0, 1), (1, 0), (1, 1)), Lt.L.entries):
        if not e.is_polynomial():
            rep.violations.append(f"entry ({i + 1},{j + 1}) has finite poles")
            return rep
        polys.append(e.as_poly())
    L11, L12, L21, L22 = polys
    if L12.degree != g or not L12.is_monic():
        rep.violations.append(f"entry (1,2) is not monic of degree {g}")
    top = max(p.degree for p in polys)
    if top > r - 2:
        rep.violations.append(f"block {top} above the leading block {r - 2} is nonzero")
    half = Fraction(1, 2)
    want_lead = (-half * tm.T(2 * r - 2), 0, tm.lead**2 / 4, -half * tm.T(2 * r - 2))
    if _block(polys, r - 2) != want_lead:
        rep.violations.append(f"block {r - 2} differs from the normalized leading block")
    b = _block(polys, r - 3)
    d = -half * tm.T(2 * r - 4)
    if (b[0], b[1], b[3]) != (d, 1, d):
        rep.violations.append(f"block {r - 3} differs from the normalized subleading block")
    return rep


def spectral_curve(Lt: TwistedConnection) -> tuple[UniPoly, UniPoly]:
    """``(trace, det)`` so that the curve reads ``y^2 - trace*y + det = 0``."""
    tr = Lt.L.trace()
    dt = Lt.L.det()
    if not (tr.is_polynomial() and dt.is_polynomial()):
        raise NonPolynomialDet("determinant or trace keeps finite poles")
    return tr.as_poly(), dt.as_poly()


def delta_inf(Lt: TwistedConnection):
    """The free entry of the subleading block, read off the connection."""
    return Lt.poly(1, 0).coeff(Lt.r_inf - 3)


def eigenvalue_series(Lt: TwistedConnection, order) -> tuple[HalfSeries, HalfSeries]:
    """Both eigenvalue branches to ``O(l**order)``.

    ``y = tr/2 -/+ sqrt(tr^2/4 - det)``; ``y1`` is the sheet whose leading
    half-integer coefficient equals ``-t_{2r-3}/2``.
    """
    tr, det = spectral_curve(Lt)
    disc = tr * tr / 4 - det
    if disc.is_zero():
        raise ValidationError("discriminant vanishes; the connection is not twisted")
    d0 = disc.degree  # the square root starts at l^(d0/2)
    order = Fraction(order)
    src = HalfSeries.from_poly(disc, Fraction(d0, 2) + order)
    root = series_sqrt(src, order)
    sign = 1 if Lt.times.lead > 0 else -1
    half_tr = HalfSeries.from_poly(tr / 2, order)
    return half_tr - root * sign, half_tr + root * sign


def extract_birkhoff_times(y1: HalfSeries, r_inf: int) -> list:
    """``t_k`` as the residue of ``l**(-k/2) * y1``."""
    out = []
    for k in range(1, 2 * r_inf - 1):
        out.append(residue_at_infinity(y1.shift(Fraction(-k, 2))))
    return out


def extract_isospectral_hams(y1: HalfSeries, r_inf: int) -> list:
    """``I_k = (1/k) [l^(-k/2-1)] y1`` for ``k = 1 .. 2r-2``."""
    out = []
    for k in range(1, 2 * r_inf - 1):
        e = Fraction(-k, 2) - 1
        if 2 * e < y1.trunc:
            raise Truncated(f"I_{k} needs y1 down to l^({e})")
        out.append(y1.coeff(e) / k)
    return out


def iso_order(r_inf: int) -> Fraction:
    """Smallest truncation order that determines every ``I_k``."""
    return Fraction(-r_inf)


def spectral_data(Lt: TwistedConnection, order) -> SpectralData:
    """Eigenvalues, Birkhoff times and isospectral Hamiltonians; see :func:`iso_order`."""
    y1, y2 = eigenvalue_series(Lt, order)
    return SpectralData(
        y1,
        y2,
        tuple(extract_birkhoff_times(y1, Lt.r_inf)),
        tuple(extract_isospectral_hams(y1, Lt.r_inf)),
    )
