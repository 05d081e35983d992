import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from bitl import itl

from oracles import central_diff, integrate_positive_axis

SHAPES = [0.5, 1.0, 2.0, 5.0]


class TestCdf:
    def test_lower_endpoint(self):
        for shape in SHAPES:
            assert itl.cdf(0.0, shape) == 0.0

    def test_hand_values(self):
        # 1 - 2^-2 * 3 and 1 - 2^-4 * 9
        assert itl.cdf(1.0, 1.0) == pytest.approx(0.25, abs=1e-15)
        assert itl.cdf(1.0, 2.0) == pytest.approx(0.4375, abs=1e-15)

    def test_tends_to_one(self):
        assert itl.cdf(1e12, 1.0) == pytest.approx(1.0, abs=1e-9)

    def test_monotone_on_grid(self):
        xs = np.linspace(0.0, 50.0, 501)
        for shape in SHAPES:
            assert np.all(np.diff(itl.cdf(xs, shape)) >= 0.0)

    def test_rejects_bad_x(self):
        with pytest.raises(ValueError):
            itl.cdf(-0.5, 1.0)
        with pytest.raises(ValueError):
            itl.cdf(np.nan, 1.0)
        with pytest.raises(ValueError):
            itl.cdf(np.inf, 1.0)

    def test_rejects_bad_shape(self):
        for shape in [0.0, -1.0, np.nan, np.inf]:
            with pytest.raises(ValueError):
                itl.cdf(1.0, shape)

    def test_no_overflow_for_large_shape(self):
        # naive powers of (x+1)^(2*shape) would overflow here
        val = itl.cdf(10.0, 500.0)
        assert 0.0 <= val <= 1.0 and np.isfinite(val)


class TestPdf:
    def test_zero_at_origin(self):
        assert itl.pdf(0.0, 3.0) == 0.0

    def test_hand_value(self):
        # 2 * 1 * 2^-3 * 3^0
        assert itl.pdf(1.0, 1.0) == pytest.approx(0.25, abs=1e-15)

    def test_nonnegative(self):
        xs = np.linspace(0.0, 100.0, 1001)
        for shape in SHAPES:
            assert np.all(itl.pdf(xs, shape) >= 0.0)

    def test_integrates_to_one(self):
        val, _ = __import__("scipy.integrate", fromlist=["quad"]).quad(
            lambda x: itl.pdf(x, 2.0),
            0.0,
            1e6,
            points=[0.1, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5],
            limit=200,
        )
        assert val == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_matches_cdf_derivative(self, shape):
        for x in [0.3, 0.7, 1.5, 3.0, 8.0]:
            approx = central_diff(lambda t: itl.cdf(t, shape), x, 1e-5)
            assert approx == pytest.approx(itl.pdf(x, shape), rel=1e-6)


class TestSf:
    def test_at_zero(self):
        for shape in SHAPES:
            assert itl.sf(0.0, shape) == 1.0

    def test_hand_value(self):
        assert itl.sf(1.0, 1.0) == pytest.approx(0.75, abs=1e-15)

    def test_deep_tail_scale(self):
        # sf(x) ~ 2/x for shape 1; the direct form keeps relative accuracy
        val = itl.sf(1e6, 1.0)
        assert 0.0 < val < 1.0
        assert val == pytest.approx(2e-6, rel=1e-2)

    @given(
        x=st.floats(0.0, 1e8, allow_nan=False),
        shape=st.floats(0.01, 50.0, allow_nan=False),
    )
    @settings(deadline=None)
    def test_complements_cdf(self, x, shape):
        assert itl.cdf(x, shape) + itl.sf(x, shape) == pytest.approx(1.0, abs=1e-14)


class TestHazard:
    def test_zero_at_origin(self):
        assert itl.hazard(0.0, 2.0) == 0.0

    def test_hand_values(self):
        assert itl.hazard(1.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-12)
        # pdf(1,2)=3/8, sf(1,2)=9/16
        assert itl.hazard(1.0, 2.0) == pytest.approx(2.0 / 3.0, rel=1e-12)

    def test_is_pdf_over_sf(self):
        xs = np.linspace(0.01, 30.0, 200)
        for shape in SHAPES:
            np.testing.assert_allclose(
                itl.hazard(xs, shape),
                itl.pdf(xs, shape) / itl.sf(xs, shape),
                rtol=1e-12,
            )

    def test_finite_far_out(self):
        assert np.isfinite(itl.hazard(1e9, 5.0))


class TestQuantile:
    def test_at_zero(self):
        for shape in SHAPES:
            assert itl.quantile(0.0, shape) == 0.0

    def test_hand_value(self):
        assert itl.quantile(0.25, 1.0) == pytest.approx(1.0, abs=1e-9)

    def test_round_trip(self):
        qs = np.arange(0.01, 1.0, 0.01)
        for shape in SHAPES:
            back = itl.cdf(itl.quantile(qs, shape), shape)
            np.testing.assert_allclose(back, qs, atol=1e-10)

    def test_strictly_increasing(self):
        qs = np.linspace(0.01, 0.99, 99)
        xs = itl.quantile(qs, 2.0)
        assert np.all(np.diff(xs) > 0.0)

    def test_rejects_q_one_and_out_of_range(self):
        for q in [1.0, -0.01, 1.5, np.nan]:
            with pytest.raises(ValueError):
                itl.quantile(q, 1.0)

    def test_extreme_upper_tail(self):
        x = itl.quantile(1.0 - 1e-9, 0.5)
        assert itl.cdf(x, 0.5) == pytest.approx(1.0 - 1e-9, abs=1e-12)


class TestSample:
    def test_empty(self):
        assert itl.sample(0, 2.0, seed=1).shape == (0,)

    def test_seed_determinism(self):
        a = itl.sample(1000, 2.0, seed=42)
        b = itl.sample(1000, 2.0, seed=42)
        np.testing.assert_array_equal(a, b)

    def test_ks_against_cdf(self):
        draws = itl.sample(100_000, 2.0, seed=7)
        res = stats.kstest(draws, lambda t: itl.cdf(t, 2.0))
        assert res.pvalue > 0.01

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            itl.sample(-1, 2.0, seed=0)


def test_pdf_mass_within_effective_support():
    # truncation point chosen from the survival function itself
    for shape in SHAPES:
        upper = itl.quantile(1.0 - 1e-9, shape)
        assert itl.sf(upper, shape) < 1e-8
        val = integrate_positive_axis(lambda x: itl.pdf(x, shape), upper)
        assert val == pytest.approx(1.0, abs=1e-6)
