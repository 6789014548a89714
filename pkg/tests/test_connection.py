from fractions import Fraction

import pytest

from helpers import canonical, chart, times
from twistiso.algebra import HalfSeries, Mat2, RatFunc, UniPoly
from twistiso.connection import (
    IrregularTimes,
    TwistedConnection,
    eigenvalue_series,
    extract_birkhoff_times,
    extract_isospectral_hams,
    iso_order,
    spectral_curve,
    spectral_data,
    validate_normalization,
)
from twistiso.errors import ValidationError
from twistiso.oper import DarbouxChart, connection_from_chart

F = Fraction


def test_times_validation():
    with pytest.raises(ValidationError):
        IrregularTimes(4, (1, 2, 3))
    with pytest.raises(ValidationError):
        IrregularTimes(4, (1, 2, 3, 4, 0, 6))
    with pytest.raises(ValidationError):
        IrregularTimes(2, (1, 1))


def test_canonical_slice():
    t = IrregularTimes.canonical(5, [F(1, 3), F(2)])
    assert t.t == (F(4), 0, F(2, 3), 0, F(0), 0, F(2), 0)
    assert t.is_canonical() and t.tau() == [F(1, 3), F(2)]


class TestNormalization:
    def test_built_connection_passes(self, rng):
        for r in (4, 5, 6):
            Lt = connection_from_chart(chart(rng, r - 3), times(rng, r))
            assert validate_normalization(Lt).ok

    def test_perturbed_leading_block(self, rng):
        Lt = connection_from_chart(chart(rng, 2), times(rng, 5))
        bump = RatFunc(UniPoly.monomial(3, 1))
        L = Lt.L
        bad = TwistedConnection(5, Mat2(L.a, L.b + bump, L.c, L.d), Lt.times)
        rep = validate_normalization(bad)
        assert not rep.ok
        assert any("block 3" in v or "(1,2)" in v for v in rep.violations)

    def test_airy_case(self):
        Lt = connection_from_chart(DarbouxChart.qp([], []), IrregularTimes.canonical(3, []))
        assert validate_normalization(Lt).ok
        assert Lt.poly(0, 1) == UniPoly([1])


class TestSpectralCurve:
    def test_zero_chart_r4(self):
        Lt = connection_from_chart(DarbouxChart.qp([0], [0]), IrregularTimes.canonical(4, [0]))
        tr, det = spectral_curve(Lt)
        assert tr.is_zero()
        assert det == UniPoly([0, 0, 0, -1])

    def test_leading_det_coefficient(self, rng):
        for r in (4, 5, 6):
            t = IrregularTimes(r, tuple(x if k % 2 else 0 for k, x in enumerate(times(rng, r).t, 1)))
            _, det = spectral_curve(connection_from_chart(chart(rng, r - 3), t))
            assert det.degree == 2 * r - 5
            assert det.coeff(2 * r - 5) == -t.lead**2 / 4

    def test_darboux_pairs_on_curve(self, rng):
        for r in (4, 5, 6):
            c, t = chart(rng, r - 3), times(rng, r)
            tr, det = spectral_curve(connection_from_chart(c, t))
            for q, p in zip(c.q, c.p):
                assert p * p - tr(q) * p + det(q) == 0

    def test_trace_is_ptilde1(self, rng):
        from twistiso.oper import ptilde1

        t = times(rng, 5)
        tr, _ = spectral_curve(connection_from_chart(chart(rng, 2), t))
        assert tr == ptilde1(t)


class TestEigenvalues:
    def test_traceless_branches_are_opposite(self, rng):
        Lt = connection_from_chart(chart(rng, 2), canonical(rng, 5))
        y1, y2 = eigenvalue_series(Lt, -5)
        assert y1 == -y2

    def test_leading_term_r4(self, rng):
        y1, _ = eigenvalue_series(connection_from_chart(chart(rng, 1), canonical(rng, 4)), -4)
        assert y1.coeff(F(5, 2)) == 0
        assert y1.coeff(F(3, 2)) == -1

    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_vieta(self, r, rng):
        t = times(rng, r)
        Lt = connection_from_chart(chart(rng, r - 3), t)
        tr, det = spectral_curve(Lt)
        order = F(-r)
        y1, y2 = eigenvalue_series(Lt, order)
        s, prod = y1 + y2, y1 * y2
        want_s = HalfSeries.from_poly(tr, order)
        lo = 2 * (r - 2) + 2 * order  # the product is known down to the sum of orders plus the leading degree
        for d in range(int(2 * order), 2 * r):
            assert s.coeff2(d) == want_s.coeff2(d)
        for d in range(int(lo), 4 * r):
            assert prod.coeff2(d) == det.coeff(d // 2) if d % 2 == 0 else prod.coeff2(d) == 0


class TestExtraction:
    @pytest.mark.parametrize("r", [3, 4, 5, 6])
    def test_round_trip(self, r, rng):
        for _ in range(5):
            t = times(rng, r)
            sd = spectral_data(connection_from_chart(chart(rng, r - 3), t), iso_order(r))
            assert list(sd.birkhoff_times) == list(t.t)

    def test_reduced_even_times_and_lead(self, rng):
        for r in (4, 5, 6):
            t = canonical(rng, r)
            sd = spectral_data(connection_from_chart(chart(rng, r - 3), t), iso_order(r))
            assert all(sd.birkhoff_times[k - 1] == 0 for k in range(2, 2 * r - 1, 2))
            assert sd.birkhoff_times[2 * r - 4] == 2
            assert all(sd.iso_hams[k - 1] == 0 for k in range(2, 2 * r - 1, 2))

    def test_single_term_read_off(self):
        y1 = HalfSeries.monomial(F(-5, 2), 3, -6)
        assert extract_isospectral_hams(y1, 4)[2] == 1

    def test_birkhoff_single_term(self):
        # -1/2 t_k l^(k/2 - 1) carries t_k
        y1 = HalfSeries.monomial(F(1, 2), F(-5, 2), -4)
        ts = extract_birkhoff_times(y1, 3)
        assert ts == [0, 0, 5, 0]

    def test_json(self, rng):
        sd = spectral_data(connection_from_chart(chart(rng, 1), canonical(rng, 4)), -4)
        js = sd.to_json(4)
        assert js["r_inf"] == 4 and all(isinstance(x, str) for x in js["times"])
