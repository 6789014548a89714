import json
import math
from fractions import Fraction

import pytest

from twistiso import __version__
from twistiso.cli import flow_demo, main, painleve_ode

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


class TestHamiltonian:
    def test_r4_value(self, capsys):
        code, out, _ = run(capsys, "hamiltonian", "--r-inf", "4", "--tau", "3", "--q", "1", "--p", "2")
        assert code == 0
        assert out["H"] == ["-3"] and out["hamiltonians"] == {"tau1": "-3"}
        assert out["version"] == __version__ and out["config"]["seed"] == 0

    def test_airy(self, capsys):
        code, out, _ = run(capsys, "hamiltonian", "--r-inf", "3")
        assert code == 0 and out["H"] == [] and out["note"] == "g=0: Airy case, no coordinates"

    def test_deterministic(self, capsys):
        main(["hamiltonian", "--r-inf", "5", "--seed", "42"])
        first = capsys.readouterr().out
        main(["hamiltonian", "--r-inf", "5", "--seed", "42"])
        assert capsys.readouterr().out == first

    def test_painleve_ode(self):
        ode = painleve_ode()
        assert ode["hamiltonian"] == "-q^3 + p^2 - 2*q*tau1"
        assert ode["qddot"] == "6*q^2 + 4*tau1"


class TestVerify:
    def test_empty_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "")
        assert code == 2 and json.loads(err)["error"] == "usage"

    def test_unknown_flag(self, capsys):
        assert main(["verify", "--bogus"]) == 2

    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--r-inf", "4,5", "--suite", "gauge", "--charts", "3")
        assert code == 0 and out["ok"]
        assert {e["r_inf"] for e in out["results"]} == {4, 5}

    def test_mutation_fails_zero_curvature(self, capsys):
        code, out, _ = run(capsys, "verify", "--r-inf", "4", "--suite", "zero-curvature", "--charts", "2", "--mutate", "H0")
        assert code == 1 and not out["ok"]

    @pytest.mark.slow
    def test_all_suites(self, capsys):
        code, out, _ = run(capsys, "verify", "--r-inf", "4,5,6", "--charts", "20")
        assert code == 0, [e for e in out["results"] if not e["ok"]][:3]


class TestCorrespond:
    def test_r5_u0(self, capsys):
        code, out, _ = run(capsys, "correspond", "--r-inf", "5", "--tau", "3/2,1", "--q", "1,2", "--p", "0,1")
        assert code == 0 and out["round_trip"]
        Q0 = F(out["lax"]["Q"][0])
        # t_3 = 2 tau_1 on the canonical slice
        assert F(out["isospectral"]["u"][0]) == Q0 - F(3) / 3
        assert out["shift_polynomials"]["u"][0]["polynomial"] == "1/3*t3 + u0"

    def test_zero_times(self, capsys):
        code, out, _ = run(capsys, "correspond", "--r-inf", "5", "--tau", "0,0", "--seed", "3")
        assert code == 0
        assert out["isospectral"]["u"] == out["lax"]["Q"]
        assert out["isospectral"]["v"] == out["lax"]["R"]

    def test_needs_canonical_times(self, capsys):
        code, _, _ = run(capsys, "correspond", "--r-inf", "4", "--times", "1,2,3,4,5,6")
        assert code == 2


class TestFlowDemo:
    def test_zero_steps_echo(self, capsys):
        code, out, _ = run(capsys, "flow-demo", "--r-inf", "4", "--tau", "1/2", "--q", "1", "--p", "2", "--steps", "0")
        assert code == 0 and out["floating_point"]
        assert out["series"] == [[0.0, 1.0, 2.0]]
        assert out["uv_drift"] == 0

    def test_abort(self, capsys):
        code, _, err = run(capsys, "flow-demo", "--r-inf", "4", "--steps", "50", "--step-size", "10", "--seed", "1")
        assert code == 3 and json.loads(err)["error"] == "numeric"

    def test_rk4_order(self):
        # successive refinements of the final state shrink by 2^4
        total = 0.5
        ends = []
        for n in (10, 20, 40, 80):
            out = flow_demo(4, [F(1, 10)], [F(1, 2)], [F(1, 3)], n, total / n)
            ends.append(out["series"][-1][1:])
        d = [max(abs(a - b) for a, b in zip(ends[i], ends[i + 1])) for i in range(3)]
        orders = [math.log2(d[i] / d[i + 1]) for i in range(2)]
        assert all(abs(o - 4) < 0.3 for o in orders), orders

    def test_bad_step_size(self, capsys):
        assert main(["flow-demo", "--r-inf", "4", "--step-size", "-1"]) == 2


class TestConfig:
    def test_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("r_inf = 4\ntau = 7\nq = 1\np = 2\n")
        code, out, _ = run(capsys, "hamiltonian", "--config", str(cfg), "--tau", "3")
        assert code == 0 and out["config"]["tau"] == ["3"] and out["H"] == ["-3"]

    def test_file_alone(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\nr_inf = 4\ntau = 3\nq = 1\np = 2\n")
        _, out, _ = run(capsys, "hamiltonian", "--config", str(cfg))
        assert out["H"] == ["-3"]

    def test_version_flag(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out
