"""Oper gauge: from Darboux coordinates to the companion system and back.

The companion (oper) form ``L`` keeps every datum in its second row.  A
polynomial gauge ``G`` with ``det G = prod(l - q_j)`` maps it to the
normalized representative ``L~``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    Mat2,
    RatFunc,
    UniPoly,
    coerce,
    fmt,
    lagrange_basis,
    rational_roots,
    vandermonde_solve,
)
from .connection import IrregularTimes, TwistedConnection
from .errors import CoincidentNodes, IrrationalRoots, NonDivisible, ValidationError

__all__ = [
    "DarbouxChart",
    "OperData",
    "ptilde1",
    "ptilde2",
    "lagrange_interpolant",
    "g0",
    "oper_rhs",
    "oper_coeffs_H",
    "companion_matrix",
    "build_oper",
    "gauge_matrix",
    "gauge_backward",
    "gauge_forward",
    "apparent_singularities",
    "connection_from_chart",
]

HALF = Fraction(1, 2)
KINDS = ("qp", "geometric", "lax", "isospectral")


@dataclass(frozen=True)
class DarbouxChart:
    """A pair of coordinate vectors of length ``g`` in one of four charts."""

    kind: str
    first: tuple
    second: tuple
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown chart kind {self.kind!r}")
        object.__setattr__(self, "first", tuple(coerce(x) for x in self.first))
        object.__setattr__(self, "second", tuple(coerce(x) for x in self.second))
        if len(self.first) != len(self.second):
            raise ValidationError("coordinate vectors differ in length")
        if self.kind == "qp":
            q = self.first
            for i in range(len(q)):
                for j in range(i + 1, len(q)):
                    if q[i] == q[j]:
                        raise CoincidentNodes(i, j)

    @classmethod
    def qp(cls, q: Sequence, p: Sequence, provenance=()) -> "DarbouxChart":
        return cls("qp", tuple(q), tuple(p), tuple(provenance))

    @property
    def g(self) -> int:
        return len(self.first)

    @property
    def q(self) -> tuple:
        return self.first

    @property
    def p(self) -> tuple:
        return self.second

    def to_json(self) -> dict:
        names = {"qp": ("q", "p"), "geometric": ("Q", "P"), "lax": ("Q", "R"), "isospectral": ("u", "v")}
        a, b = names[self.kind]
        out = {"kind": self.kind, a: [fmt(x) for x in self.first], b: [fmt(x) for x in self.second]}
        if self.provenance:
            out["provenance"] = list(self.provenance)
        return out


def ptilde1(times: IrregularTimes) -> UniPoly:
    """``-sum_j t_{2j+2} l^j`` for ``j = 0 .. r-2``."""
    return UniPoly([-times.T(2 * j + 2) for j in range(times.r_inf - 1)])


def ptilde2_coeff(times: IrregularTimes, k: int):
    """Quadratic time sum ``1/4 sum_j (-1)^j t_j t_{2k+4-j}``."""
    T = times.T
    acc = Fraction(0)
    for j in range(1, 2 * times.r_inf - 1):
        acc = acc + (-1) ** j * T(j) * T(2 * k + 4 - j)
    return acc / 4


def ptilde2(times: IrregularTimes) -> UniPoly:
    """Coefficients for ``k = r-3 .. 2r-4``, with the ``hbar/2 t_{2r-2}`` correction at ``k = r-3``."""
    r = times.r_inf
    c = [Fraction(0)] * (2 * r - 3)
    for k in range(r - 3, 2 * r - 3):
        c[k] = ptilde2_coeff(times, k)
    c[r - 3] = c[r - 3] + HALF * times.hbar * times.T(2 * r - 2)
    return UniPoly(c)


def lagrange_interpolant(q: Sequence, p: Sequence) -> UniPoly:
    """``Q`` of degree below ``g`` with ``Q(q_i) = -p_i``."""
    out = UniPoly()
    for pi, ell in zip(p, lagrange_basis(q)):
        out = out - ell * coerce(pi)
    return out


def g0(times: IrregularTimes, q: Sequence):
    r = times.r_inf
    return HALF * times.T(2 * r - 4) + HALF * times.T(2 * r - 2) * sum(q, Fraction(0))


def oper_rhs(chart: DarbouxChart, times: IrregularTimes) -> list:
    """Right-hand side of the interpolation system for the oper coefficients."""
    P1, P2 = ptilde1(times), ptilde2(times)
    q, p, hb = chart.q, chart.p, times.hbar
    out = []
    for i, (qi, pi) in enumerate(zip(q, p)):
        acc = pi * pi - P1(qi) * pi + P2(qi)
        for j, (qj, pj) in enumerate(zip(q, p)):
            if j != i:
                acc = acc + hb * (pj - pi) / (qi - qj)
        out.append(acc)
    return out


def oper_coeffs_H(chart: DarbouxChart, times: IrregularTimes) -> list:
    """``H_0 .. H_{g-1}`` with ``sum_k H_k q_i^k`` equal to the right-hand side at each node."""
    return vandermonde_solve(chart.q, oper_rhs(chart, times), transposed=True)


def companion_matrix(chart: DarbouxChart, times: IrregularTimes, H: Sequence) -> Mat2:
    P1, P2 = ptilde1(times), ptilde2(times)
    L21 = RatFunc(UniPoly(list(H)) - P2)
    L22 = RatFunc(P1)
    for qj, pj in zip(chart.q, chart.p):
        L21 = L21 - RatFunc.pole(pj, qj)
        L22 = L22 + RatFunc.pole(times.hbar, qj)
    return Mat2(RatFunc(0), RatFunc(1), L21, L22)


@dataclass(frozen=True)
class OperData:
    chart: DarbouxChart
    times: IrregularTimes
    L: Mat2
    H: tuple
    P1: UniPoly
    P2: UniPoly
    Q: UniPoly
    Pi: UniPoly
    g0: object

    def with_H(self, H: Sequence) -> "OperData":
        """Same data with replaced oper coefficients (used to inject faults)."""
        H = tuple(coerce(h) for h in H)
        return replace(self, H=H, L=companion_matrix(self.chart, self.times, H))


def build_oper(chart: DarbouxChart, times: IrregularTimes) -> OperData:
    if chart.kind != "qp":
        raise ValidationError("the oper is built from a (q, p) chart")
    if chart.g != times.g:
        raise ValidationError(f"chart has {chart.g} pairs, expected {times.g}")
    H = tuple(oper_coeffs_H(chart, times))
    return OperData(
        chart=chart,
        times=times,
        L=companion_matrix(chart, times, H),
        H=H,
        P1=ptilde1(times),
        P2=ptilde2(times),
        Q=lagrange_interpolant(chart.q, chart.p),
        Pi=UniPoly.from_roots(chart.q),
        g0=g0(times, chart.q),
    )


def gauge_matrix(chart: DarbouxChart, times: IrregularTimes) -> Mat2:
    """``[[1, 0], [-Q - (t_{2r-2} l / 2 + g0) Pi, Pi]]`` over polynomials."""
    r = times.r_inf
    Pi = UniPoly.from_roots(chart.q)
    Q = lagrange_interpolant(chart.q, chart.p)
    lin = UniPoly([g0(times, chart.q), HALF * times.T(2 * r - 2)])
    return Mat2(UniPoly([1]), UniPoly(), -Q - lin * Pi, Pi)


def _rat(m: Mat2) -> Mat2:
    return m.map(lambda x: x if isinstance(x, RatFunc) else RatFunc(x))


def gauge_backward(oper: OperData, G: Optional[Mat2] = None, strict: bool = True) -> TwistedConnection:
    """``L~ = G^-1 (L G - dG/dl)``.

    With ``strict`` every entry must be a polynomial; a leftover pole
    raises :class:`NonDivisible` instead of producing a bogus connection.
    """
    if G is None:
        G = gauge_matrix(oper.chart, oper.times)
    Gr = _rat(G)
    inner = oper.L * Gr - Gr.derivative()
    Lt = Gr.adjugate() * inner
    det = Gr.det()
    Lt = Lt.map(lambda x: x / det)
    if strict:
        for e in Lt.entries:
            if not e.is_polynomial():
                raise NonDivisible(e.num.divmod(e.den)[1])
    return TwistedConnection(oper.times.r_inf, Lt, oper.times, oper.chart)


def gauge_forward(Lt: TwistedConnection, G: Mat2) -> Mat2:
    """``L = G L~ G^-1 + dG/dl G^-1``."""
    Gr = _rat(G)
    Ginv = Gr.inverse()
    return Gr * Lt.L * Ginv + Gr.derivative() * Ginv


def apparent_singularities(Lt: TwistedConnection) -> DarbouxChart:
    """Roots of ``L~_{12}`` and the values of ``L~_{11}`` there."""
    L12 = Lt.poly(0, 1)
    q = rational_roots(L12)
    if len(q) != L12.degree:
        raise IrrationalRoots(f"{L12} does not split over the rationals")
    if len(set(q)) != len(q):
        i = next(k for k in range(len(q)) if q.count(q[k]) > 1)
        raise CoincidentNodes(i, q.index(q[i], i + 1))
    L11 = Lt.entry(0, 0)
    if Lt.chart is not None and Lt.chart.kind == "qp":
        # keep the original ordering when the provenance is known
        order = [x for x in Lt.chart.q if x in q]
        if len(order) == len(q):
            q = order
    return DarbouxChart.qp(q, [L11(x) for x in q])


def connection_from_chart(chart: DarbouxChart, times: IrregularTimes) -> TwistedConnection:
    return gauge_backward(build_oper(chart, times))
