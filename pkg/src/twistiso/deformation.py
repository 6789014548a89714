"""Deformation coefficients, the auxiliary matrix, Hamiltonians and zero curvature.

A deformation direction ``alpha`` is a vector over the basis ``e_1 ..
e_{2r-2}`` of time derivatives.  Along it the Darboux coordinates move by
Hamilton's equations and the Lax pair ``(L, A_alpha)`` stays compatible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Mat2, RatFunc, UniPoly, coerce, toeplitz_lower_solve, vandermonde_solve
from .connection import IrregularTimes
from .errors import ValidationError
from .oper import DarbouxChart, OperData, build_oper, ptilde1, ptilde2

__all__ = [
    "DeformationVector",
    "AuxMatrix",
    "nu_coefficients",
    "c_coefficients",
    "mu_coefficients",
    "auxiliary_matrix",
    "general_hamiltonian",
    "hamiltonian_gradients",
    "hamiltonian_flow",
    "time_derivative_L",
    "zero_curvature_terms",
    "zero_curvature_residual",
    "c0_lemma_value",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DeformationVector:
    """Components of ``alpha`` over ``e_1 .. e_{2r-2}``."""

    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(coerce(a) for a in self.alpha))

    @classmethod
    def basis(cls, r_inf: int, k: int) -> "DeformationVector":
        a = [Fraction(0)] * (2 * r_inf - 2)
        a[k - 1] = Fraction(1)
        return cls(tuple(a))

    @classmethod
    def zero(cls, r_inf: int) -> "DeformationVector":
        return cls((Fraction(0),) * (2 * r_inf - 2))

    def __add__(self, o):
        return DeformationVector(tuple(a + b for a, b in zip(self.alpha, _alpha(o))))

    def __mul__(self, s):
        return DeformationVector(tuple(a * s for a in self.alpha))

    __rmul__ = __mul__

    def __len__(self):
        return len(self.alpha)

    def __iter__(self):
        return iter(self.alpha)

    def A(self, k: int):
        return self.alpha[k - 1] if 1 <= k <= len(self.alpha) else Fraction(0)


def _alpha(a) -> tuple:
    if isinstance(a, DeformationVector):
        return a.alpha
    return tuple(coerce(x) for x in a)


def _check(alpha: tuple, times: IrregularTimes):
    if len(alpha) != 2 * times.r_inf - 2:
        raise ValidationError(f"direction needs {2 * times.r_inf - 2} components")


def _A(alpha: tuple, k: int):
    return alpha[k - 1] if 1 <= k <= len(alpha) else Fraction(0)


def m_inf_column(times: IrregularTimes) -> list:
    """First column ``(t_{2r-3}, t_{2r-5}, .., t_1)`` of the lower Toeplitz matrix."""
    r = times.r_inf
    return [times.T(2 * r - 3 - 2 * i) for i in range(r - 1)]


def nu_coefficients(alpha, times: IrregularTimes) -> list:
    """``nu_{-1} .. nu_{r-3}`` from the Toeplitz system with weights ``2 alpha_m / m``."""
    a = _alpha(alpha)
    _check(a, times)
    r = times.r_inf
    rhs = [2 * _A(a, 2 * r - 3 - 2 * i) / (2 * r - 3 - 2 * i) for i in range(r - 1)]
    return toeplitz_lower_solve(m_inf_column(times), rhs)


def c_coefficients(alpha, times: IrregularTimes) -> list:
    """``c_0 .. c_{r-1}``; ``c_0`` is zero (it only adds a multiple of the identity to A)."""
    a = _alpha(alpha)
    _check(a, times)
    r, T = times.r_inf, times.T
    rhs = []
    for k in range(r - 1, 0, -1):
        acc = Fraction(0)
        for m in range(k, r):
            o = 2 * k + 2 * r - 2 * m - 3
            acc = acc + _A(a, o) / o * T(2 * m) - _A(a, o + 1) / (o + 1) * T(2 * m - 1)
        rhs.append(acc)
    top_down = toeplitz_lower_solve(m_inf_column(times), rhs)
    return [Fraction(0)] + top_down[::-1]


def mu_coefficients(nu: Sequence, chart: DarbouxChart) -> tuple[list, list]:
    """Residues of ``A_12`` and ``A_11`` at the apparent singularities."""
    g = chart.g
    mu = vandermonde_solve(chart.q, [nu[k + 1] for k in range(1, g + 1)])
    rho = [-m * p for m, p in zip(mu, chart.p)]
    return mu, rho


@dataclass(frozen=True)
class AuxMatrix:
    """First row of ``A_alpha`` in the oper gauge and its coefficient records."""

    A11: RatFunc
    A12: RatFunc
    nu: tuple
    c: tuple
    mu: tuple
    rho: tuple

    def full(self, oper: OperData) -> Mat2:
        """Second row from the companion structure of ``L``."""
        L21, L22 = oper.L.c, oper.L.d
        A21 = self.A11.derivative() + self.A12 * L21
        A22 = self.A11 + self.A12.derivative() + self.A12 * L22
        return Mat2(self.A11, self.A12, A21, A22)


def auxiliary_matrix(alpha, chart: DarbouxChart, times: IrregularTimes) -> AuxMatrix:
    nu = nu_coefficients(alpha, times)
    c = c_coefficients(alpha, times)
    mu, rho = mu_coefficients(nu, chart)
    A12 = RatFunc(UniPoly([nu[1], nu[0]]))
    A11 = RatFunc(UniPoly(c))
    for qj, mj, rj in zip(chart.q, mu, rho):
        A12 = A12 + RatFunc.pole(mj, qj)
        A11 = A11 + RatFunc.pole(rj, qj)
    return AuxMatrix(A11, A12, tuple(nu), tuple(c), tuple(mu), tuple(rho))


def general_hamiltonian(alpha, chart: DarbouxChart, times: IrregularTimes, H: Sequence | None = None):
    """``sum nu_{k+1} H_k - hbar sum c_k q^k - hbar nu_0 sum p - hbar nu_{-1} sum q p``."""
    nu = nu_coefficients(alpha, times)
    c = c_coefficients(alpha, times)
    if H is None:
        H = build_oper(chart, times).H
    hb = times.hbar
    out = Fraction(0)
    for k, h in enumerate(H):
        out = out + nu[k + 2] * h
    for qj, pj in zip(chart.q, chart.p):
        for k in range(1, len(c)):
            out = out - hb * c[k] * qj**k
        out = out - hb * nu[1] * pj - hb * nu[0] * qj * pj
    return out


# -- exact gradients ---------------------------------------------------------


def _rhs_jacobians(chart: DarbouxChart, times: IrregularTimes):
    """``d rhs_i / d q_m`` and ``d rhs_i / d p_m`` for the oper interpolation system."""
    P1 = ptilde1(times)
    P2 = ptilde2(times)
    dP1, dP2 = P1.derivative(), P2.derivative()
    q, p, hb, g = chart.q, chart.p, times.hbar, chart.g
    Jq = [[Fraction(0)] * g for _ in range(g)]
    Jp = [[Fraction(0)] * g for _ in range(g)]
    for i in range(g):
        for m in range(g):
            if i == m:
                aq = -dP1(q[m]) * p[m] + dP2(q[m])
                ap = 2 * p[m] - P1(q[m])
                for j in range(g):
                    if j != m:
                        aq = aq - hb * (p[j] - p[m]) / (q[m] - q[j]) ** 2
                        ap = ap - hb / (q[m] - q[j])
                Jq[i][m], Jp[i][m] = aq, ap
            else:
                Jq[i][m] = hb * (p[m] - p[i]) / (q[i] - q[m]) ** 2
                Jp[i][m] = hb / (q[i] - q[m])
    return Jq, Jp


def hamiltonian_gradients(alpha, chart: DarbouxChart, times: IrregularTimes):
    """``(dHam/dq_j, dHam/dp_j)`` by implicit differentiation of the Vandermonde system.

    ``sum_k nu_{k+1} H_k = mu . rhs`` where ``mu`` solves the same transposed
    system as the residues of ``A_12``; differentiating ``W H = rhs`` gives
    ``dH = W^-1 (d rhs - dW H)``.
    """
    g = chart.g
    nu = nu_coefficients(alpha, times)
    c = c_coefficients(alpha, times)
    mu, _ = mu_coefficients(nu, chart)
    H = build_oper(chart, times).H
    dh = UniPoly(list(H)).derivative()
    Jq, Jp = _rhs_jacobians(chart, times)
    hb = times.hbar
    gq, gp = [], []
    for m in range(g):
        qm, pm = chart.q[m], chart.p[m]
        sq = sum((mu[i] * Jq[i][m] for i in range(g)), Fraction(0)) - mu[m] * dh(qm)
        sp = sum((mu[i] * Jp[i][m] for i in range(g)), Fraction(0))
        sq = sq - hb * sum((k * c[k] * qm ** (k - 1) for k in range(1, len(c))), Fraction(0)) - hb * nu[0] * pm
        sp = sp - hb * nu[1] - hb * nu[0] * qm
        gq.append(sq)
        gp.append(sp)
    return gq, gp


def hamiltonian_flow(alpha, chart: DarbouxChart, times: IrregularTimes):
    """``(q_dot, p_dot) = (dHam/dp, -dHam/dq)``."""
    gq, gp = hamiltonian_gradients(alpha, chart, times)
    return gp, [-x for x in gq]


# -- zero curvature ------------------------------------------------------------


def _dP1(alpha: tuple, times: IrregularTimes) -> UniPoly:
    """Derivative of the first oper polynomial along ``alpha`` (it is linear in t)."""
    return UniPoly([-_A(alpha, 2 * j + 2) for j in range(times.r_inf - 1)])


def _dP2(alpha: tuple, times: IrregularTimes) -> UniPoly:
    """Derivative of the second oper polynomial along ``alpha``."""
    r = times.r_inf
    c = [Fraction(0)] * (2 * r - 3)
    T = times.T
    for k in range(r - 3, 2 * r - 3):
        acc = Fraction(0)
        for j in range(1, 2 * r - 1):
            acc = acc + (-1) ** j * _A(alpha, j) * T(2 * k + 4 - j)
        c[k] = acc / 2  # symmetric bilinear form, so the two slots contribute equally
    c[r - 3] = c[r - 3] + HALF * times.hbar * _A(alpha, 2 * r - 2)
    return UniPoly(c)


def time_derivative_L(alpha, oper: OperData) -> Mat2:
    """``delta_alpha L`` through Hamilton's equations and the explicit time dependence."""
    a = _alpha(alpha)
    chart, times = oper.chart, oper.times
    hb = times.hbar
    g = chart.g
    qd, pd = hamiltonian_flow(a, chart, times)
    dP1 = _dP1(a, times) * hb
    dP2 = _dP2(a, times) * hb
    # dH = W^-1 (d rhs - dW H)
    dH: list = []
    if g:
        Jq, Jp = _rhs_jacobians(chart, times)
        dh = UniPoly(list(oper.H)).derivative()
        drhs = []
        for i in range(g):
            qi, pi = chart.q[i], chart.p[i]
            v = -dP1(qi) * pi + dP2(qi) - dh(qi) * qd[i]
            for m in range(g):
                v = v + Jq[i][m] * qd[m] + Jp[i][m] * pd[m]
            drhs.append(v)
        dH = vandermonde_solve(chart.q, drhs, transposed=True)
    d21 = RatFunc(UniPoly(dH) - dP2)
    d22 = RatFunc(dP1)
    for qj, pj, qdj, pdj in zip(chart.q, chart.p, qd, pd):
        d21 = d21 - RatFunc.pole(pdj, qj) - RatFunc.pole(pj * qdj, qj, 2)
        d22 = d22 + RatFunc.pole(hb * qdj, qj, 2)
    zero = RatFunc(0)
    return Mat2(zero, zero, d21, d22)


@dataclass(frozen=True)
class ZeroCurvatureTerms:
    dA: Mat2
    dL: Mat2
    A: Mat2
    L: Mat2

    def residual(self, order: str = "AL") -> Mat2:
        """``dA/dl - delta L + (A L - L A)``; ``order="LA"`` flips the commutator."""
        comm = self.A.commutator(self.L) if order == "AL" else self.L.commutator(self.A)
        return self.dA - self.dL + comm


def zero_curvature_terms(alpha, chart: DarbouxChart, times: IrregularTimes, oper: OperData | None = None) -> ZeroCurvatureTerms:
    if oper is None:
        oper = build_oper(chart, times)
    aux = auxiliary_matrix(alpha, oper.chart, oper.times)
    A = aux.full(oper)
    return ZeroCurvatureTerms(A.derivative(), time_derivative_L(alpha, oper), A, oper.L)


def zero_curvature_residual(alpha, chart: DarbouxChart, times: IrregularTimes, oper: OperData | None = None) -> Mat2:
    """Residual of the compatibility condition; zero for a valid Lax pair."""
    return zero_curvature_terms(alpha, chart, times, oper).residual()


def c0_lemma_value(alpha, chart: DarbouxChart, times: IrregularTimes):
    """``1/2 [l^g] (delta L~_12 - d/dl (L~_12 A_12))``.

    This is ``c_0`` read off the ``(1,2)`` entry under the hypothesis
    ``d/dl A~_12 = O(l^(g-2))``.  It vanishes exactly when ``nu_{-1} = 0``
    (for instance along every reduced tau-direction) and equals
    ``-(g+1) nu_{-1} / 2`` otherwise.
    """
    g = chart.g
    qd, _ = hamiltonian_flow(alpha, chart, times)
    Pi = UniPoly.from_roots(chart.q)
    dPi = UniPoly()
    for j, qdj in enumerate(qd):
        rest = UniPoly.from_roots([x for m, x in enumerate(chart.q) if m != j])
        dPi = dPi - rest * qdj
    aux = auxiliary_matrix(alpha, chart, times)
    prod = (RatFunc(Pi) * aux.A12).as_poly()
    return HALF * (dPi - prod.derivative()).coeff(g)
