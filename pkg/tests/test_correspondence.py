from fractions import Fraction

import pytest

from helpers import canonical, chart, rat, times
from twistiso.algebra import MultiPoly, is_symplectic
from twistiso.connection import IrregularTimes, iso_order, spectral_data
from twistiso.correspondence import (
    V_FORMS,
    flow_compatibility_check,
    geometric_backward,
    geometric_forward,
    geometric_jacobian,
    h_i_map,
    hamiltonian_in_I,
    lax_backward,
    lax_forward,
    lax_jacobian,
    map_qp_to_uv,
    map_uv_to_qp,
    matrices_in_geometric,
    matrices_in_qp,
    solve_isospectral_u,
    solve_isospectral_v,
)
from twistiso.deformation import DeformationVector
from twistiso.errors import ValidationError
from twistiso.oper import DarbouxChart, connection_from_chart
from twistiso.reduction import reduced_hamiltonian

F = Fraction


def _compose(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


class TestGeometric:
    def test_example(self):
        gm = geometric_forward(DarbouxChart.qp([2, 3], [0, 0]))
        assert list(gm.first) == [6, -5]

    def test_g1_momentum(self, rng):
        c = chart(rng, 1)
        gm = geometric_forward(c)
        assert list(gm.first) == [-c.q[0]] and list(gm.second) == [-c.p[0]]

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_round_trip(self, g, rng):
        c = chart(rng, g)
        back = geometric_backward(geometric_forward(c))
        assert sorted(zip(back.q, back.p)) == sorted(zip(c.q, c.p))

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    def test_symplectic(self, g, rng):
        for _ in range(5):
            assert is_symplectic(geometric_jacobian(chart(rng, g)))


class TestLax:
    def test_reduced_g1(self, rng):
        # R_0 is the constant term of L~_11 = p_1 = -P_0
        c, t = chart(rng, 1), canonical(rng, 4)
        gm = geometric_forward(c)
        lx = lax_forward(gm, t)
        assert lx.first == gm.first
        assert list(lx.second) == [-gm.second[0]]
        assert connection_from_chart(c, t).poly(0, 0).coeff(0) == lx.second[0]

    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_round_trip(self, r, rng):
        t = times(rng, r)
        gm = geometric_forward(chart(rng, r - 3))
        back = lax_backward(lax_forward(gm, t), t)
        assert (back.first, back.second) == (gm.first, gm.second)

    def test_composed_map_is_not_symplectic(self, rng):
        found = False
        for _ in range(5):
            c, t = chart(rng, 2), times(rng, 5)
            J = _compose(lax_jacobian(geometric_forward(c), t), geometric_jacobian(c))
            found |= not is_symplectic(J)
        assert found

    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_l12_and_a12_routes(self, r, rng):
        c, t = chart(rng, r - 3), times(rng, r)
        gm = geometric_forward(c)
        for k in (1, 2 * r - 3, 2 * r - 2):
            a = DeformationVector.basis(r, k)
            ref, geo = matrices_in_qp(c, t, a), matrices_in_geometric(gm, t, a)
            assert geo.L12 == ref.L12 and geo.A12 == ref.A12


class TestHIMap:
    def _eigen_I(self, c, t):
        return list(spectral_data(connection_from_chart(c, t), iso_order(t.r_inf)).iso_hams[: 2 * t.g - 1])

    def test_zero_chart(self, rng):
        for r in (4, 5):
            c = DarbouxChart.qp([rat(rng) + 10 * i for i in range(r - 3)], [0] * (r - 3))
            t = IrregularTimes.canonical(r, [0] * (r - 3))
            assert list(h_i_map(c, t).I) == self._eigen_I(c, t)

    def test_diagonal_at_r4(self, rng):
        hi = h_i_map(chart(rng, 1), canonical(rng, 4))
        assert hi.column == (2,)

    def test_round_trip(self, rng):
        for r in (4, 5, 6):
            c, t = chart(rng, r - 3), canonical(rng, r)
            hi = h_i_map(c, t)
            assert h_i_map(c, t, I=hi.I).H == hi.H

    def test_rejects_even_times(self, rng):
        with pytest.raises(ValidationError):
            h_i_map(chart(rng, 2), times(rng, 5))


class TestHamiltonianInI:
    def test_r4(self, rng):
        for _ in range(10):
            q, p, tau = rat(rng), rat(rng), rat(rng)
            assert hamiltonian_in_I([tau], DarbouxChart.qp([q], [p]), 1) == p * p - q**3 - 2 * tau * q

    def test_zero_data(self, rng):
        c = DarbouxChart.qp([rat(rng)], [0])
        assert hamiltonian_in_I([0], c, 1) == reduced_hamiltonian([0], c, 1)

    @pytest.mark.parametrize("r", [5, 6])
    def test_agrees_with_reduced(self, r, rng):
        c, t = chart(rng, r - 3), canonical(rng, r)
        for j in range(1, r - 2):
            assert hamiltonian_in_I(t.tau(), c, j) == reduced_hamiltonian(t.tau(), c, j)

    def test_affine_in_I(self, rng):
        c, tau = chart(rng, 2), [rat(rng), rat(rng)]
        I1, I2 = [rat(rng) for _ in range(3)], [rat(rng) for _ in range(3)]
        a, b = rat(rng), rat(rng)
        mix = [a * x + b * y for x, y in zip(I1, I2)]
        H = lambda I: hamiltonian_in_I(tau, c, 1, I=I)
        assert H(mix) == a * H(I1) + b * H(I2) + (1 - a - b) * H([0, 0, 0])


def _at_zero_times(e):
    """Drop every monomial that carries a time."""
    kept = {m: c for m, c in e.terms().items() if not any(n.startswith("t") for n, _ in m)}
    return MultiPoly(kept, e.variables)


class TestShiftSolutions:
    def test_u_r5(self):
        assert [str(e) for e in solve_isospectral_u(5).exprs] == ["1/3*t3 + u0", "u1"]

    def test_u_r6(self):
        assert [str(e) for e in solve_isospectral_u(6).exprs] == ["1/5*t5*u2 + 1/3*t3 + u0", "2/5*t5 + u1", "u2"]

    @pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
    def test_u_zero_time_collapse(self, r):
        sol = solve_isospectral_u(r)
        for k, e in enumerate(sol.exprs):
            assert _at_zero_times(e) == MultiPoly.var(sol.const(k))

    @pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
    def test_v_zero_time_collapse(self, r):
        sol = solve_isospectral_v(r)
        for k, e in enumerate(sol.exprs):
            assert _at_zero_times(e) == MultiPoly.var(sol.const(k))

    @pytest.mark.parametrize("r", [4, 5, 6, 7, 8, 9])
    def test_v_proof_form_integrates(self, r):
        sol = solve_isospectral_v(r, form="proof")
        for k, e in enumerate(sol.exprs):
            assert _at_zero_times(e) == MultiPoly.var(sol.const(k))

    @pytest.mark.parametrize("solver", [solve_isospectral_u, solve_isospectral_v])
    def test_triangular(self, solver):
        sol = solver(7)
        for k, e in enumerate(sol.exprs):
            consts = {n for m in e.terms() for n, _ in m if not n.startswith("t")}
            assert consts <= {sol.const(m) for m in range(k, sol.g)}

    def test_forms(self):
        assert set(V_FORMS) == {"theorem", "proof"}
        with pytest.raises(ValidationError):
            solve_isospectral_v(5, form="other")

    def test_json(self):
        js = solve_isospectral_u(5).to_json()
        assert js[0] == {"coordinate": "Q0", "polynomial": "1/3*t3 + u0"}


class TestCompatibility:
    @pytest.mark.parametrize("r", [5, 6, 7])
    def test_passes(self, r):
        rep = flow_compatibility_check(r)
        assert rep.ok, rep.failures

    def test_proof_form_at_r8(self):
        sols = [solve_isospectral_u(8), solve_isospectral_v(8, form="proof")]
        rep = flow_compatibility_check(8, sols)
        assert rep.ok, rep.failures

    @pytest.mark.parametrize("r", [6, 7])
    def test_mutation(self, r):
        su = solve_isospectral_u(r)
        bad = su.perturbed(0, f"t{2 * r - 7}", F(1, 2))
        assert not flow_compatibility_check(r, [bad]).ok


class TestComposedMap:
    def test_zero_times(self, rng):
        c = chart(rng, 2)
        t = IrregularTimes.canonical(5, [0, 0])
        uv = map_qp_to_uv(c, t)
        lx = lax_forward(geometric_forward(c), t)
        assert (uv.first, uv.second) == (lx.first, lx.second)

    def test_r5_u0(self, rng):
        c, t = chart(rng, 2), canonical(rng, 5)
        uv = map_qp_to_uv(c, t)
        Q = lax_forward(geometric_forward(c), t).first
        assert uv.first[0] == Q[0] - t.T(3) / 3
        assert uv.first[1] == Q[1]

    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_round_trip(self, r, rng):
        c, t = chart(rng, r - 3), canonical(rng, r)
        back = map_uv_to_qp(map_qp_to_uv(c, t), t)
        assert sorted(zip(back.q, back.p)) == sorted(zip(c.q, c.p))

    def test_needs_canonical_times(self, rng):
        with pytest.raises(ValidationError):
            map_qp_to_uv(chart(rng, 2), times(rng, 5))
