"""Command line front end.

Subcommands::

    twistiso hamiltonian --r-inf 4 --tau 3 --q 1 --p 2
    twistiso verify --suite all --r-inf 4,5,6 --charts 20
    twistiso correspond --r-inf 5 --tau 1,2 --seed 7
    twistiso flow-demo --r-inf 4 --tau 0 --q 1 --p 0 --steps 100 --step-size 1/100

Every report is JSON with sorted keys and embeds the configuration, the
seed and the library version.  Rationals are written as ``"p/q"``
strings; only ``flow-demo`` emits floats.

Exit codes: 0 pass, 1 failed identity, 2 usage or validation error,
3 numeric abort.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import __version__
from .algebra import MultiPoly, fmt, is_symplectic
from .connection import IrregularTimes, iso_order, spectral_data, validate_normalization
from .correspondence import (
    flow_compatibility_check,
    geometric_forward,
    geometric_jacobian,
    h_i_map,
    hamiltonian_in_I,
    lax_forward,
    map_qp_to_uv,
    map_uv_to_qp,
    matrices_in_geometric,
    matrices_in_lax,
    matrices_in_qp,
    solve_isospectral_u,
    solve_isospectral_v,
)
from .deformation import DeformationVector, general_hamiltonian, hamiltonian_flow, zero_curvature_residual
from .errors import TwistIsoError, ValidationError
from .oper import DarbouxChart, apparent_singularities, build_oper, gauge_backward, gauge_forward, gauge_matrix, ptilde2
from .reduction import (
    ReducedTimes,
    alpha_tau,
    reduced_hamiltonian,
    reduced_oper_coeffs,
    reduced_ptilde2,
    times_backward,
    times_forward,
    trivial_flow_check,
    trivial_time_invariance_check,
    two_form_reduction_check,
)

SUITES = ("gauge", "zero-curvature", "reduction", "correspondence")
MUTATIONS = ("H0",)


class UsageError(Exception):
    pass


class NumericAbort(Exception):
    pass


# -- configuration ---------------------------------------------------------------


def _rationals(text: Optional[str]) -> Optional[list]:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational list {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; keys use dashes or underscores."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


@dataclass
class RunConfig:
    """Validated run parameters; ``times`` is either explicit or canonical from ``tau``."""

    r_inf: list
    tau: Optional[list] = None
    times: Optional[list] = None
    q: Optional[list] = None
    p: Optional[list] = None
    hbar: Fraction = Fraction(1)
    order: Optional[Fraction] = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def lst(x):
            return None if x is None else [fmt(v) for v in x]

        out = {
            "r_inf": self.r_inf if len(self.r_inf) > 1 else self.r_inf[0],
            "tau": lst(self.tau),
            "times": lst(self.times),
            "q": lst(self.q),
            "p": lst(self.p),
            "hbar": fmt(self.hbar),
            "order": None if self.order is None else fmt(self.order),
            "seed": self.seed,
        }
        out.update(self.extra)
        return out


def build_config(ns: argparse.Namespace, multi_r: bool = False) -> RunConfig:
    values = read_config(ns.config) if getattr(ns, "config", None) else {}
    for key in ("r_inf", "tau", "times", "q", "p", "hbar", "order", "seed"):
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    rs = _int_list(str(values.get("r_inf", "4,5,6" if multi_r else "4")))
    if not rs or any(r < 3 for r in rs):
        raise UsageError("--r-inf must be at least 3")
    if len(rs) > 1 and not multi_r:
        raise UsageError("this command takes a single --r-inf")
    try:
        hbar = Fraction(str(values.get("hbar", "1")))
        order = Fraction(str(values["order"])) if values.get("order") is not None else None
        seed = int(values.get("seed", 0))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    cfg = RunConfig(
        r_inf=rs,
        tau=_rationals(values.get("tau")),
        times=_rationals(values.get("times")),
        q=_rationals(values.get("q")),
        p=_rationals(values.get("p")),
        hbar=hbar,
        order=order,
        seed=seed,
    )
    if cfg.tau is not None and cfg.times is not None:
        raise UsageError("give either --tau or --times, not both")
    if (cfg.q is None) != (cfg.p is None):
        raise UsageError("--q and --p go together")
    return cfg


# -- random fixtures -------------------------------------------------------------------


def random_rational(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_chart(rng: random.Random, g: int) -> DarbouxChart:
    q: list = []
    while len(q) < g:
        x = random_rational(rng)
        if x not in q:
            q.append(x)
    return DarbouxChart.qp(q, [random_rational(rng) for _ in range(g)])


def random_times(rng: random.Random, r: int, hbar=1) -> IrregularTimes:
    t = [random_rational(rng) for _ in range(2 * r - 2)]
    while t[2 * r - 4] == 0:
        t[2 * r - 4] = random_rational(rng)
    return IrregularTimes(r, tuple(t), hbar)


def random_reduced_times(rng: random.Random, r: int) -> ReducedTimes:
    """Off-slice times with ``T2`` a rational square so everything stays exact."""
    T2 = rng.choice([Fraction(1), Fraction(4), Fraction(9, 4), Fraction(1, 4)])
    return ReducedTimes(
        r,
        tuple(random_rational(rng) for _ in range(r - 3)),
        tuple(random_rational(rng) for _ in range(r - 1)),
        random_rational(rng),
        T2,
    )


def _times_for(cfg: RunConfig, r: int, rng: random.Random) -> IrregularTimes:
    if cfg.times is not None:
        return IrregularTimes(r, tuple(cfg.times), cfg.hbar)
    tau = cfg.tau if cfg.tau is not None else [random_rational(rng) for _ in range(r - 3)]
    return IrregularTimes.canonical(r, tau, cfg.hbar)


def _chart_for(cfg: RunConfig, r: int, rng: random.Random) -> DarbouxChart:
    if cfg.q is not None:
        if len(cfg.q) != r - 3 or len(cfg.p) != r - 3:
            raise ValidationError(f"r_inf = {r} needs {r - 3} values of q and p")
        return DarbouxChart.qp(cfg.q, cfg.p)
    return random_chart(rng, r - 3)


# -- reports ---------------------------------------------------------------------------


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, suite: str, identity: str, anchor: str, ok: bool, r_inf: int, case: int, detail: str = "") -> None:
        e = {"suite": suite, "identity": identity, "anchor": anchor, "ok": bool(ok), "r_inf": r_inf, "case": case}
        if detail and not ok:
            e["detail"] = detail
        self.entries.append(e)

    def guard(self, suite, identity, anchor, r_inf, case, fn: Callable[[], object]) -> None:
        """Run ``fn``; a truthy result passes, a library error fails with its message."""
        try:
            res = fn()
        except TwistIsoError as exc:
            self.add(suite, identity, anchor, False, r_inf, case, f"{type(exc).__name__}: {exc}")
            return
        if hasattr(res, "ok") and hasattr(res, "failures"):
            self.add(suite, identity, anchor, res.ok, r_inf, case, "; ".join(res.failures[:3]))
        else:
            self.add(suite, identity, anchor, bool(res), r_inf, case)

    @property
    def ok(self) -> bool:
        return all(e["ok"] for e in self.entries)

    def summary(self) -> dict:
        out: dict = {}
        for e in self.entries:
            s = out.setdefault(e["suite"], {"passed": 0, "failed": 0})
            s["passed" if e["ok"] else "failed"] += 1
        return out


def emit(payload: dict, cfg: Optional[RunConfig], pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    payload = dict(payload)
    payload["version"] = __version__
    if cfg is not None:
        payload["config"] = cfg.to_json()
        payload["seed"] = cfg.seed
    text = json.dumps(payload, sort_keys=True, indent=2 if pretty else None, separators=None if pretty else (",", ":"))
    stream.write(text + "\n")


# -- suites -----------------------------------------------------------------------------


def same_points(a: DarbouxChart, b: DarbouxChart) -> bool:
    """Charts agree up to the ordering of the pairs ``(q_j, p_j)``."""
    return sorted(zip(a.q, a.p)) == sorted(zip(b.q, b.p))


def _mutated_H(oper, mutate: Optional[str]):
    if mutate == "H0" and oper.H:
        H = list(oper.H)
        H[0] = H[0] + 1
        return oper.with_H(H)
    return oper


def suite_gauge(rep: Report, r: int, case: int, chart, times, mutate=None, order=None) -> None:
    name = "gauge"
    oper = _mutated_H(build_oper(chart, times), mutate)
    holder = {}

    def backward():
        holder["Lt"] = gauge_backward(oper)
        return validate_normalization(holder["Lt"]).ok

    rep.guard(name, "gauge_backward gives a normalized polynomial connection", "normalized representative", r, case, backward)
    if "Lt" not in holder:
        return
    Lt = holder["Lt"]
    G = gauge_matrix(chart, times)
    rep.guard(name, "gauge_forward recovers the oper matrix", "oper gauge", r, case, lambda: gauge_forward(Lt, G) == oper.L)
    rep.guard(name, "apparent singularities recover (q, p)", "apparent singularities", r, case, lambda: apparent_singularities(Lt) == chart)
    rep.guard(
        name,
        "Birkhoff times round trip",
        "twisted residue formula",
        r,
        case,
        lambda: list(spectral_data(Lt, iso_order(r) if order is None else order).birkhoff_times) == list(times.t),
    )


def suite_zero_curvature(rep: Report, r: int, case: int, chart, times, mutate=None) -> None:
    name = "zero-curvature"
    oper = _mutated_H(build_oper(chart, times), mutate)
    for k in range(1, 2 * r - 1):
        a = DeformationVector.basis(r, k)
        rep.guard(name, f"residual vanishes along e_{k}", "compatibility of the Lax pair", r, case,
                  lambda a=a: zero_curvature_residual(a, chart, times, oper).is_zero())
    canon = IrregularTimes.canonical(r, times.tau() if times.is_canonical() else [t / 2 for t in times.t[: r - 3]], times.hbar)
    oc = _mutated_H(build_oper(chart, canon), mutate)
    rt = ReducedTimes.canonical(r, canon.tau())
    for j in range(1, r - 2):
        a = alpha_tau(rt, j, times.hbar)
        rep.guard(name, f"residual vanishes along tau_{j}", "compatibility of the Lax pair", r, case,
                  lambda a=a: zero_curvature_residual(a, chart, canon, oc).is_zero())


def suite_reduction(rep: Report, r: int, case: int, chart, rng: random.Random) -> None:
    name = "reduction"
    g = r - 3
    tau = [random_rational(rng) for _ in range(g)]
    canon = IrregularTimes.canonical(r, tau)
    for j in range(1, g + 1):
        rep.guard(name, f"reduced Hamiltonian tau_{j} matches the general one", "reduced Hamiltonian", r, case,
                  lambda j=j: reduced_hamiltonian(tau, chart, j) == general_hamiltonian(alpha_tau(ReducedTimes.canonical(r, tau), j), chart, canon))
    rep.guard(name, "reduced P2 closed form", "canonical trivial times", r, case, lambda: reduced_ptilde2(tau, r) == ptilde2(canon))
    rt = random_reduced_times(rng, r)
    times = times_backward(rt)
    rep.guard(name, "times round trip", "trivial and isomonodromic times", r, case, lambda: times_forward(times) == rt)
    rep.guard(name, "trivial flows of shifted coordinates vanish", "trivial flows", r, case, lambda: trivial_flow_check(chart, times))
    rep.guard(name, "2-form reduction core", "symplectic reduction", r, case, lambda: two_form_reduction_check(chart, times))
    rep.guard(name, "reduced Hamiltonian ignores trivial times", "independence of trivial times", r, case,
              lambda: trivial_time_invariance_check(rt, chart))


def suite_correspondence(rep: Report, r: int, case: int, chart, rng: random.Random, mutate=None, sols=None) -> None:
    name = "correspondence"
    g = r - 3
    tau = [random_rational(rng) for _ in range(g)]
    canon = IrregularTimes.canonical(r, tau)

    def two_routes():
        Lt = gauge_backward(build_oper(chart, canon))
        I_eig = spectral_data(Lt, iso_order(r)).iso_hams
        H = list(build_oper(chart, canon).H)
        if mutate == "H0" and H:
            H[0] += 1
        return list(h_i_map(chart, canon, H=H).I) == list(I_eig[: max(2 * g - 1, 0)])

    rep.guard(name, "H <-> I agrees with the eigenvalue expansion", "determinant identity", r, case, two_routes)
    for j in range(1, g + 1):
        rep.guard(name, f"Hamiltonian through I, tau_{j}", "Hamiltonian in isospectral form", r, case,
                  lambda j=j: hamiltonian_in_I(tau, chart, j) == reduced_hamiltonian(tau, chart, j))
    times = random_times(rng, r)
    gm = geometric_forward(chart)
    lx = lax_forward(gm, times)
    for k in range(1, 2 * r - 1):
        a = DeformationVector.basis(r, k)

        def same(a=a):
            m0 = matrices_in_qp(chart, times, a)
            return m0 == matrices_in_geometric(gm, times, a) == matrices_in_lax(lx, times, a)

        rep.guard(name, f"row-1 entries agree across charts, e_{k}", "geometric and Lax matrices", r, case, same)
    if g <= 4:
        rep.guard(name, "(q, p) -> (Q, P) is symplectic", "geometric coordinates", r, case, lambda: is_symplectic(geometric_jacobian(chart)))

    def round_trip():
        uv = map_qp_to_uv(chart, canon, sols)
        back = map_uv_to_qp(uv, canon, sols)
        return same_points(back, chart)

    rep.guard(name, "(u, v) round trip", "isospectral coordinates", r, case, round_trip)


def run_verify(cfg: RunConfig, suites: Sequence[str], charts: int, mutate: Optional[str]) -> Report:
    rep = Report()
    for r in cfg.r_inf:
        if r < 4:
            raise ValidationError("verification suites need r_inf >= 4")
        rng = random.Random(f"{cfg.seed}:{r}")
        sols = (solve_isospectral_u(r), solve_isospectral_v(r)) if "correspondence" in suites else None
        for case in range(charts):
            chart = _chart_for(cfg, r, rng) if cfg.q is not None else random_chart(rng, r - 3)
            times = IrregularTimes(r, tuple(cfg.times), cfg.hbar) if cfg.times is not None else random_times(rng, r, cfg.hbar)
            if "gauge" in suites:
                suite_gauge(rep, r, case, chart, times, mutate, cfg.order)
            if "zero-curvature" in suites:
                suite_zero_curvature(rep, r, case, chart, times, mutate)
            if "reduction" in suites:
                suite_reduction(rep, r, case, chart, rng)
            if "correspondence" in suites:
                suite_correspondence(rep, r, case, chart, rng, mutate, sols)
        if "correspondence" in suites:
            rep.guard("correspondence", "shift solutions are compatible", "flow compatibility", r, -1,
                      lambda r=r: flow_compatibility_check(r) if r <= 8 else True)
    return rep


# -- commands ----------------------------------------------------------------------------


def painleve_ode(tau_name: str = "tau1") -> dict:
    """Hamilton's equations of the reduced ``r = 4`` Hamiltonian, with ``p`` eliminated."""
    V = ("q", "p", tau_name)
    q, p, t = (MultiPoly({((v, 1),): 1}, V) for v in V)
    H = reduced_hamiltonian([t], DarbouxChart.qp([q], [p]), 1)
    qdot = H.diff("p")
    pdot = -H.diff("q")
    qddot = qdot.diff("q") * qdot + qdot.diff("p") * pdot + qdot.diff(tau_name)
    if qddot.depends_on("p"):
        raise ValidationError("elimination left a momentum dependence")
    return {"hamiltonian": str(H), "qdot": str(qdot), "pdot": str(pdot), "qddot": str(qddot)}


def cmd_hamiltonian(cfg: RunConfig) -> dict:
    r = cfg.r_inf[0]
    rng = random.Random(cfg.seed)
    if r == 3:
        return {"H": [], "hamiltonians": {}, "note": "g=0: Airy case, no coordinates"}
    times = _times_for(cfg, r, rng)
    chart = _chart_for(cfg, r, rng)
    out = {"chart": chart.to_json(), "times": times.to_json()}
    if times.is_canonical():
        tau = times.tau()
        out["H"] = [fmt(x) for x in reduced_oper_coeffs(tau, chart, r, cfg.hbar)]
        out["hamiltonians"] = {f"tau{j}": fmt(reduced_hamiltonian(tau, chart, j, cfg.hbar)) for j in range(1, r - 2)}
    else:
        rt = times_forward(times)
        out["H"] = [fmt(x) for x in build_oper(chart, times).H]
        out["hamiltonians"] = {f"tau{j}": fmt(general_hamiltonian(alpha_tau(rt, j, cfg.hbar), chart, times)) for j in range(1, r - 2)}
    if r == 4:
        out["ode"] = painleve_ode()
    return out


def cmd_correspond(cfg: RunConfig) -> dict:
    r = cfg.r_inf[0]
    if r < 4:
        raise ValidationError("the correspondence needs r_inf >= 4")
    rng = random.Random(cfg.seed)
    times = _times_for(cfg, r, rng)
    if not times.is_canonical():
        raise ValidationError("the correspondence is stated on the canonical slice")
    chart = _chart_for(cfg, r, rng)
    sols = (solve_isospectral_u(r), solve_isospectral_v(r))
    gm = geometric_forward(chart)
    lx = lax_forward(gm, times)
    uv = map_qp_to_uv(chart, times, sols)
    back = map_uv_to_qp(uv, times, sols)
    return {
        "times": times.to_json(),
        "qp": chart.to_json(),
        "geometric": gm.to_json(),
        "lax": lx.to_json(),
        "isospectral": uv.to_json(),
        "shift_polynomials": {"u": sols[0].to_json(), "v": sols[1].to_json()},
        "round_trip": same_points(back, chart),
    }


def _rk4(f, y, h):
    k1 = f(0, y)
    k2 = f(h / 2, [a + h / 2 * b for a, b in zip(y, k1)])
    k3 = f(h / 2, [a + h / 2 * b for a, b in zip(y, k2)])
    k4 = f(h, [a + h * b for a, b in zip(y, k3)])
    return [a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(y, k1, k2, k3, k4)]


def flow_demo(r: int, tau: Sequence, q: Sequence, p: Sequence, steps: int, step_size: float, j: int = 1, hbar=1) -> dict:
    """RK4 along ``d/dtau_j`` in floating point.

    Diagnostics are evaluated exactly at the rationalized float states:
    the zero-curvature residual at start and end, and the isospectral
    coordinates ``(u, v)`` at start and end.
    """
    g = r - 3
    tau0 = [float(x) for x in tau]
    h = float(step_size)

    def field(s_off, y, s0):
        tt = list(tau0)
        tt[j - 1] = tau0[j - 1] + s0 + s_off
        times = IrregularTimes.canonical(r, tt, float(hbar))
        a = alpha_tau(ReducedTimes.canonical(r, tt), j, float(hbar))
        qd, pd = hamiltonian_flow(a, DarbouxChart.qp(y[:g], y[g:]), times)
        return [float(x) for x in qd] + [float(x) for x in pd]

    y = [float(x) for x in q] + [float(x) for x in p]
    series = [[0.0] + list(y)]
    s = 0.0
    for _ in range(steps):
        try:
            y = _rk4(lambda off, yy: field(off, yy, s), y, h)
        except (OverflowError, ZeroDivisionError, TwistIsoError) as exc:
            raise NumericAbort(f"integration broke down at s = {s}: {exc}") from exc
        s += h
        if not all(math.isfinite(v) for v in y):
            raise NumericAbort(f"non-finite state at s = {s}")
        series.append([s] + list(y))

    def exact_state(yv, s_end):
        tt = [Fraction(x) for x in tau]
        tt[j - 1] += Fraction(s_end)
        return DarbouxChart.qp([Fraction(v) for v in yv[:g]], [Fraction(v) for v in yv[g:]]), IrregularTimes.canonical(r, tt, hbar)

    diag = {}
    sols = (solve_isospectral_u(r), solve_isospectral_v(r))
    for label, row in (("start", series[0]), ("end", series[-1])):
        ch, tm = exact_state(row[1:], row[0])
        a = alpha_tau(ReducedTimes.canonical(r, tm.tau()), j, hbar)
        res = zero_curvature_residual(a, ch, tm)
        uv = map_qp_to_uv(ch, tm, sols)
        diag[label] = {
            "zero_curvature_residual_max": max(
                (float(abs(c)) for e in res.entries for c in e.num.coeffs), default=0.0
            ),
            "u": [float(x) for x in uv.first],
            "v": [float(x) for x in uv.second],
        }
    drift = max((abs(a - b) for a, b in zip(diag["end"]["u"] + diag["end"]["v"], diag["start"]["u"] + diag["start"]["v"])), default=0.0)
    return {"floating_point": True, "direction": f"tau{j}", "series": series, "diagnostics": diag, "uv_drift": drift}


def cmd_flow_demo(cfg: RunConfig, steps: int, step_size: str) -> dict:
    r = cfg.r_inf[0]
    if r not in (4, 5, 6):
        raise ValidationError("flow-demo supports r_inf in {4, 5, 6}")
    if steps < 0:
        raise ValidationError("--steps must be non-negative")
    try:
        h = float(Fraction(step_size))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad --step-size {step_size!r}") from exc
    if not (h > 0 and math.isfinite(h)):
        raise ValidationError("--step-size must be a positive finite number")
    rng = random.Random(cfg.seed)
    tau = cfg.tau if cfg.tau is not None else [random_rational(rng) for _ in range(r - 3)]
    chart = _chart_for(cfg, r, rng)
    return flow_demo(r, tau, chart.q, chart.p, steps, h, hbar=cfg.hbar)


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r-inf", dest="r_inf", help="pole order at infinity (verify accepts a list)")
    common.add_argument("--tau", help="comma-separated isomonodromic times (canonical slice)")
    common.add_argument("--times", help="comma-separated Birkhoff times t_1..t_{2r-2}")
    common.add_argument("--q", help="comma-separated apparent singularities")
    common.add_argument("--p", help="comma-separated conjugate momenta")
    common.add_argument("--hbar", help="deformation parameter (default 1)")
    common.add_argument("--order", help="truncation order for series (default -r_inf)")
    common.add_argument("--seed", help="seed for random fixtures (default 0)")
    common.add_argument("--config", help="flat key = value file; flags override it")
    fmt_group = common.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt_group.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(prog="twistiso", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("hamiltonian", parents=[common], help="oper coefficients and reduced Hamiltonians")
    v = sub.add_parser("verify", parents=[common], help="run exact identity suites")
    v.add_argument("--suite", default="all", help="gauge, zero-curvature, reduction, correspondence or all")
    v.add_argument("--charts", type=int, default=20, help="random charts per r_inf")
    v.add_argument("--mutate", choices=MUTATIONS, help="inject a fault to check that suites can fail")
    sub.add_parser("correspond", parents=[common], help="chart chain (q,p) -> (Q,P) -> (Q,R) -> (u,v)")
    f = sub.add_parser("flow-demo", parents=[common], help="floating point RK4 along a tau flow")
    f.add_argument("--steps", type=int, default=100)
    f.add_argument("--step-size", dest="step_size", default="1/100")
    return parser


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if ns.command == "verify":
            cfg = build_config(ns, multi_r=True)
            suite = (ns.suite or "").strip()
            if suite == "all":
                suites = list(SUITES)
            elif suite in SUITES:
                suites = [suite]
            else:
                raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
            if ns.charts < 1:
                raise UsageError("--charts must be positive")
            cfg.extra = {"suite": suite, "charts": ns.charts, "mutate": ns.mutate}
            rep = run_verify(cfg, suites, ns.charts, ns.mutate)
            emit({"ok": rep.ok, "summary": rep.summary(), "results": rep.entries}, cfg, ns.pretty)
            return 0 if rep.ok else 1
        cfg = build_config(ns)
        if ns.command == "hamiltonian":
            emit(cmd_hamiltonian(cfg), cfg, ns.pretty)
        elif ns.command == "correspond":
            emit(cmd_correspond(cfg), cfg, ns.pretty)
        else:
            cfg.extra = {"steps": ns.steps, "step_size": ns.step_size}
            emit(cmd_flow_demo(cfg, ns.steps, ns.step_size), cfg, ns.pretty)
        return 0
    except UsageError as exc:
        return _fail(2, "usage", str(exc))
    except NumericAbort as exc:
        return _fail(3, "numeric", str(exc))
    except TwistIsoError as exc:
        return _fail(2, type(exc).__name__, str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
