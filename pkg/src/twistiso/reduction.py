"""Trivial and isomonodromic times, shifted coordinates and the reduced Hamiltonian.

Of the ``2r-2`` deformation directions, ``g+4`` are trivial: after a
time-dependent symplectic shift of the Darboux coordinates they generate
no motion.  The remaining ``g`` directions are the isomonodromic times
``tau``.  Fixing the trivial times at the canonical slice leaves the
Painleve I hierarchy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .algebra import UniPoly, coerce, is_symplectic, matrix_rank, rational_root, rational_sqrt, toeplitz_unit_inverse_coeffs, vandermonde_solve
from .connection import IrregularTimes
from .deformation import DeformationVector, _dP1, general_hamiltonian, hamiltonian_flow
from .errors import IrrationalPower, ValidationError
from .oper import DarbouxChart, ptilde1

__all__ = [
    "ReducedTimes",
    "basis_vectors",
    "basis_rank",
    "times_forward",
    "times_backward",
    "alpha_tau",
    "alpha_tau_closed_form",
    "shift_coordinates",
    "unshift_coordinates",
    "shift_jacobian",
    "trivial_directions",
    "trivial_time_variations",
    "trivial_flow_check",
    "two_form_reduction_check",
    "trivial_time_invariance_check",
    "shifted_hamiltonian",
    "trivial_hamiltonians",
    "reduced_ptilde2",
    "reduced_nu",
    "reduced_oper_coeffs",
    "reduced_hamiltonian",
    "CheckReport",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ReducedTimes:
    """``tau_1..tau_g`` with trivial times ``T_{inf,1..r-1}``, ``T1`` and ``T2``."""

    r_inf: int
    tau: tuple
    T_inf: tuple = ()
    T1: Fraction = Fraction(0)
    T2: Fraction = Fraction(1)

    def __post_init__(self):
        r = self.r_inf
        object.__setattr__(self, "tau", tuple(coerce(x) for x in self.tau))
        T_inf = tuple(coerce(x) for x in self.T_inf) or (Fraction(0),) * (r - 1)
        object.__setattr__(self, "T_inf", T_inf)
        object.__setattr__(self, "T1", coerce(self.T1))
        object.__setattr__(self, "T2", coerce(self.T2))
        if len(self.tau) != r - 3 or len(T_inf) != r - 1:
            raise ValidationError("wrong number of reduced times")
        if self.T2 == 0:
            raise ValidationError("T2 must be nonzero")

    @classmethod
    def canonical(cls, r_inf: int, tau: Sequence) -> "ReducedTimes":
        return cls(r_inf, tuple(tau))

    @property
    def is_canonical(self) -> bool:
        return all(x == 0 for x in self.T_inf) and self.T1 == 0 and self.T2 == 1

    def sqrt_T2(self) -> Fraction:
        s = rational_sqrt(self.T2)
        if s is None:
            raise IrrationalPower(f"T2 = {self.T2} has no rational square root")
        return s

    def to_json(self) -> dict:
        from .algebra import fmt

        return {"tau": [fmt(x) for x in self.tau], "canonical": self.is_canonical}


# -- deformation basis --------------------------------------------------------


def basis_vectors(times: IrregularTimes) -> dict:
    """``w_k = e_{2k}`` and ``u_k = 1/2 sum_s s t_{s+2k+2} e_s``."""
    r = times.r_inf
    n = 2 * r - 2
    out = {}
    for k in range(1, r):
        out[f"w{k}"] = DeformationVector.basis(r, 2 * k)
    for k in range(-1, r - 2):
        a = [HALF * s * times.T(s + 2 * k + 2) for s in range(1, n + 1)]
        out[f"u{k}"] = DeformationVector(tuple(a))
    return out


def basis_rank(times: IrregularTimes) -> int:
    return matrix_rank([list(v) for v in basis_vectors(times).values()])


def trivial_directions(times: IrregularTimes) -> dict:
    b = basis_vectors(times)
    return {k: v for k, v in b.items() if k.startswith("w") or k in ("u-1", "u0")}


# -- times ---------------------------------------------------------------------


def _root_s(times: IrregularTimes) -> Fraction:
    """``s = sqrt(T2)``, i.e. the ``(2r-3)``-th root of ``t_{2r-3}/2``."""
    return rational_root(times.lead / 2, 2 * times.r_inf - 3)


def _delta(r: int, k: int, p: int) -> Fraction:
    num = prod(2 * r - 2 * m - 5 for m in range(p + 1, r - k - 1))
    n = r - k - p - 2
    return Fraction(num, 2**n * factorial(n))


def _gamma(r: int, k: int) -> Fraction:
    num = prod(2 * r - 2 * m - 5 for m in range(0, r - k - 1))
    n = r - 1 - k
    return Fraction(num, 2**n * factorial(n))


def times_backward(rt: ReducedTimes, hbar=1) -> IrregularTimes:
    """Birkhoff times from ``(tau, T)``; ``T2`` must be a rational square."""
    r = rt.r_inf
    s = rt.sqrt_T2()
    T1 = rt.T1
    t = [Fraction(0)] * (2 * r - 2)
    for k in range(1, r):
        t[2 * k - 1] = rt.T_inf[k - 1]
    t[2 * r - 4] = 2 * s ** (2 * r - 3)
    t[2 * r - 6] = (2 * r - 5) * T1 * s ** (2 * r - 5)
    for k in range(1, r - 2):
        acc = _gamma(r, k) * T1 ** (r - 1 - k)
        for p in range(1, r - k - 1):
            acc = acc + _delta(r, k, p) * T1 ** (r - k - p - 2) * rt.tau[p - 1]
        t[2 * k - 2] = 2 * s ** (2 * k - 1) * acc
    return IrregularTimes(r, tuple(t), hbar)


def times_forward(times: IrregularTimes) -> ReducedTimes:
    """``(tau, T)`` from Birkhoff times; needs ``t_{2r-3}/2`` to be a perfect power."""
    r = times.r_inf
    s = _root_s(times)
    t = times.T
    h = HALF * t(2 * r - 5)
    T1 = t(2 * r - 5) / (2 * r - 5) * s ** (-(2 * r - 5))
    tau = []
    for k in range(1, r - 2):
        acc = Fraction(0)
        for i in range(k):
            pr = prod(2 * r - 2 * k + 2 * j - 7 for j in range(1, i + 1))
            w = Fraction((-1) ** i * pr, factorial(i) * (2 * r - 5) ** i)
            acc = acc + w * h**i * s ** (-((2 * r - 3) * i + 2 * r - 5 - 2 * k)) * HALF * t(2 * r - 5 - 2 * k + 2 * i)
        pr = prod(2 * r - 2 * k + 2 * j - 7 for j in range(1, k + 1))
        w = Fraction((-1) ** k * pr, (k + 1) * factorial(k - 1) * (2 * r - 5) ** k)
        acc = acc + w * h ** (k + 1) * s ** (-(k + 1) * (2 * r - 5))
        tau.append(acc)
    T_inf = tuple(t(2 * k) for k in range(1, r))
    return ReducedTimes(r, tuple(tau), T_inf, T1, s * s)


def alpha_tau(rt: ReducedTimes, j: int, hbar=1) -> DeformationVector:
    """Direction of ``d/dtau_j`` normalized so that the canonical slice gives ``e_{2r-2j-5}``.

    ``t`` is affine in ``tau``, so the unit difference is the exact
    derivative; the factor one half matches the reduced Hamiltonian.
    """
    base = times_backward(rt, hbar).t
    tau = list(rt.tau)
    tau[j - 1] += 1
    bumped = times_backward(ReducedTimes(rt.r_inf, tuple(tau), rt.T_inf, rt.T1, rt.T2), hbar).t
    return DeformationVector(tuple(HALF * (b - a) for a, b in zip(base, bumped)))


def alpha_tau_closed_form(rt: ReducedTimes, k: int) -> list:
    """Closed-form ``d t_{2i-1} / d tau_k`` for ``i = 1 .. r-k-2`` (zero elsewhere)."""
    r = rt.r_inf
    s = rt.sqrt_T2()
    out = [Fraction(0)] * (2 * r - 2)
    for i in range(1, r - k - 1):
        out[2 * i - 2] = 2 * _delta(r, i, k) * rt.T1 ** (r - i - k - 2) * s ** (2 * i - 1)
    return out


def trivial_time_variations(times: IrregularTimes, alpha) -> tuple:
    """``(d T1, d T2)`` along ``sum alpha_k d/dt_k`` (no ``hbar`` factor)."""
    r = times.r_inf
    a = list(alpha)
    n, m = 2 * r - 3, 2 * r - 5
    s = _root_s(times)
    tn, tm = times.T(n), times.T(m)
    dT2_dtn = s * s / (n * s**n)
    dT1_dtm = s ** (-m) / m
    dT1_dtn = -tm / (2 * n) * s ** (-m - n)
    an, am = a[n - 1], (a[m - 1] if m >= 1 else Fraction(0))
    return am * dT1_dtm + an * dT1_dtn, an * dT2_dtn


# -- shifted coordinates --------------------------------------------------------


def _T12(times: IrregularTimes) -> tuple:
    rt = times_forward(times)
    return rt.T1, rt.T2


def shift_coordinates(chart: DarbouxChart, times: IrregularTimes) -> DarbouxChart:
    """``q' = T2 q + T1`` and ``p' = (p - P1(q)/2) / T2``."""
    T1, T2 = _T12(times)
    P1 = ptilde1(times)
    q = [T2 * x + T1 for x in chart.q]
    p = [(y - HALF * P1(x)) / T2 for x, y in zip(chart.q, chart.p)]
    return DarbouxChart.qp(q, p, chart.provenance + ("shifted",))


def unshift_coordinates(shifted: DarbouxChart, times: IrregularTimes) -> DarbouxChart:
    T1, T2 = _T12(times)
    P1 = ptilde1(times)
    q = [(x - T1) / T2 for x in shifted.q]
    p = [T2 * y + HALF * P1(x) for x, y in zip(q, shifted.p)]
    return DarbouxChart.qp(q, p)


def shift_jacobian(chart: DarbouxChart, times: IrregularTimes) -> list[list]:
    """Jacobian of ``(q, p) -> (q', p')`` in the ordering ``(q_1..q_g, p_1..p_g)``."""
    T1, T2 = _T12(times)
    dP1 = ptilde1(times).derivative()
    g = chart.g
    J = [[Fraction(0)] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[i][i] = T2
        J[g + i][i] = -HALF * dP1(chart.q[i]) / T2
        J[g + i][g + i] = 1 / T2
    return J


# -- checks ----------------------------------------------------------------------


@dataclass
class CheckReport:
    """Named identities with pass/fail; ``failures`` keeps the first offending detail."""

    results: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.results[name] = self.results.get(name, True) and bool(ok)
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def __bool__(self):
        return self.ok


def trivial_flow_check(chart: DarbouxChart, times: IrregularTimes) -> CheckReport:
    """Shifted coordinates are frozen along ``w_k``, ``u_{-1}`` and ``u_0``."""
    rep = CheckReport()
    hb = times.hbar
    T1, T2 = _T12(times)
    P1 = ptilde1(times)
    dP1 = P1.derivative()
    for name, alpha in trivial_directions(times).items():
        qd, pd = hamiltonian_flow(alpha, chart, times)
        dT1, dT2 = (hb * x for x in trivial_time_variations(times, alpha))
        tP1 = _dP1(alpha.alpha, times) * hb
        for j, (q, p) in enumerate(zip(chart.q, chart.p)):
            dq = T2 * qd[j] + dT2 * q + dT1
            dp = -dT2 / T2**2 * (p - HALF * P1(q)) + (pd[j] - HALF * tP1(q) - HALF * dP1(q) * qd[j]) / T2
            rep.record(f"{name}: shifted q flow", dq == 0, f"index {j + 1} moves by {dq}")
            rep.record(f"{name}: shifted p flow", dp == 0, f"index {j + 1} moves by {dp}")
            if name.startswith("w"):
                k = int(name[1:])
                want = -hb / 2 * q ** (k - 1)
                rep.record(f"{name}: q evolution", qd[j] == 0, f"index {j + 1}")
                rep.record(f"{name}: p evolution", pd[j] == want, f"index {j + 1}: {pd[j]} != {want}")
            elif name == "u-1":
                rep.record("u-1: q evolution", qd[j] == -hb * q, f"index {j + 1}")
            else:
                rep.record("u0: q evolution", qd[j] == -hb, f"index {j + 1}")
                rep.record("u0: p evolution", pd[j] == 0, f"index {j + 1}")
    return rep


def trivial_hamiltonians(chart: DarbouxChart, times: IrregularTimes) -> dict:
    return {name: general_hamiltonian(a, chart, times) for name, a in trivial_directions(times).items()}


def shifted_hamiltonian(alpha, chart: DarbouxChart, times: IrregularTimes):
    """Hamiltonian after the time-dependent shift: ``Ham + hbar * delta_alpha F``.

    ``F = p' (T2 q + T1) + 1/2 int_0^q P1`` generates the shift; only its
    explicit time dependence contributes.
    """
    hb = times.hbar
    a = list(alpha)
    dT1, dT2 = trivial_time_variations(times, a)
    ints = _dP1(tuple(a), times).coeffs
    shifted = shift_coordinates(chart, times)
    out = general_hamiltonian(a, chart, times)
    for q, ps in zip(chart.q, shifted.p):
        prim = sum((c * q ** (k + 1) / (k + 1) for k, c in enumerate(ints)), Fraction(0))
        out = out + hb * (ps * (dT2 * q + dT1) + HALF * prim)
    return out


def _probe_chart(chart: DarbouxChart) -> DarbouxChart:
    """A second chart, used to test that a quantity does not depend on ``(q, p)``."""
    q = [x + Fraction(1, 7 + i) for i, x in enumerate(chart.q)]
    p = [y - Fraction(2, 3 + i) for i, y in enumerate(chart.p)]
    return DarbouxChart.qp(q, p)


def two_form_reduction_check(chart: DarbouxChart, times: IrregularTimes) -> CheckReport:
    """Computational core of the 2-form reduction.

    (a) along every trivial direction the shifted Hamiltonian carries no
    dependence on the coordinates (it vanishes up to a function of the
    times alone, which drops out of the 2-form);
    (b) the closed-form ``alpha^{tau_k}`` equals the exact Jacobian of the times.
    """
    rep = CheckReport()
    other = _probe_chart(chart)
    for name, alpha in trivial_directions(times).items():
        K1 = shifted_hamiltonian(alpha, chart, times)
        K2 = shifted_hamiltonian(alpha, other, times)
        rep.record(f"(a) shifted Ham along {name} is coordinate free", K1 == K2, f"{K1} != {K2}")
    rt = times_forward(times)
    for k in range(1, times.g + 1):
        exact = [2 * x for x in alpha_tau(rt, k, times.hbar)]
        rep.record(f"(b) alpha for tau_{k}", alpha_tau_closed_form(rt, k) == exact)
    rep.record("shift is symplectic", is_symplectic(shift_jacobian(chart, times)))
    return rep


def trivial_time_invariance_check(rt: ReducedTimes, shifted: DarbouxChart, hbar=1) -> CheckReport:
    """Reduced Hamiltonians do not see the trivial times.

    At fixed shifted coordinates and ``tau``, the full Hamiltonian along
    ``d/dtau_j`` (shift included) differs from the reduced one by a
    function of the times only; this is checked by comparing two charts.
    """
    rep = CheckReport()
    times = times_backward(rt, hbar)
    other = _probe_chart(shifted)
    for j in range(1, times.g + 1):
        a = alpha_tau(rt, j, hbar)
        d = []
        for ch in (shifted, other):
            K = shifted_hamiltonian(a, unshift_coordinates(ch, times), times)
            d.append(K - reduced_hamiltonian(rt.tau, ch, j, hbar))
        rep.record(f"tau_{j}: difference is coordinate free", d[0] == d[1], f"{d[0]} != {d[1]}")
        if rt.is_canonical:
            rep.record(f"tau_{j}: equal on the canonical slice", d[0] == 0, f"offset {d[0]}")
    return rep


# -- reduced objects at the canonical slice -------------------------------------


def reduced_ptilde2(tau: Sequence, r_inf: int) -> UniPoly:
    """Closed form of the second oper polynomial on the canonical slice."""
    r = r_inf
    if r == 3:
        return UniPoly([0, -1])
    tau = [coerce(x) for x in tau]

    def tt(i):
        return tau[i - 1] if 1 <= i <= len(tau) else Fraction(0)

    c = [Fraction(0)] * (2 * r - 4)
    c[2 * r - 5] = Fraction(-1)
    for k in range(r - 2, 2 * r - 6):
        acc = 2 * tt(2 * r - k - 6)
        for m in range(k - r + 6, r - 2):
            acc = acc + tt(r - m - 2) * tt(r - k + m - 5)
        c[k] = -acc
    acc = 2 * tt(r - 3)
    for m in range(3, r - 2):
        acc = acc + tt(r - m - 2) * tt(m - 2)
    c[r - 3] = c[r - 3] - acc
    return UniPoly(c)


def reduced_nu(tau: Sequence, j: int, r_inf: int) -> list:
    """``nu_1 .. nu_g`` for the ``tau_j`` direction through the unit Toeplitz inverse."""
    g = r_inf - 3
    F = toeplitz_unit_inverse_coeffs(list(tau)[: max(g - 2, 0)])
    w = Fraction(1, 2 * r_inf - 2 * j - 5)
    out = []
    for k in range(1, g + 1):
        if k == j:
            out.append(w)
        elif k >= j + 2:
            out.append(w * F[k - j - 2])
        else:
            out.append(Fraction(0))
    return out


def reduced_oper_coeffs(tau: Sequence, chart: DarbouxChart, r_inf: int, hbar=1) -> list:
    P2 = reduced_ptilde2(tau, r_inf)
    q, p = chart.q, chart.p
    hb = coerce(hbar)
    rhs = []
    for i, (qi, pi) in enumerate(zip(q, p)):
        acc = pi * pi + P2(qi)
        for m, (qm, pm) in enumerate(zip(q, p)):
            if m != i:
                acc = acc + hb * (pm - pi) / (qi - qm)
        rhs.append(acc)
    return vandermonde_solve(q, rhs, transposed=True)


def reduced_hamiltonian(tau: Sequence, chart: DarbouxChart, j: int, hbar=1):
    """``sum_k nu_{k+1} H_k`` in shifted coordinates for the ``tau_j`` flow."""
    r = len(tau) + 3
    nu = reduced_nu(tau, j, r)
    H = reduced_oper_coeffs(tau, chart, r, hbar)
    return sum((n * h for n, h in zip(nu, H)), Fraction(0))
