import math
import random

import pytest

from relaygain import (LinkGains, OperatingPoint, collaboration_gain, cp_allocate,
                       cp_bounds_high_tern, cp_bounds_low_tern, high_tern_gain_limit,
                       low_tern_gain_limit, ncp_allocate, ncp_bounds_high_tern,
                       ncp_bounds_low_tern, small_k_gain_slope)
from relaygain.bounds import _tangent_construction, _tangent_gap
from relaygain.verify import GRID_EPS, GRID_GAINS, GRID_K, sandwich_violations

LN2, LN3 = math.log(2), math.log(3)
ONES = LinkGains(1, 1, 1)


class TestNcpHighTern:
    def test_symmetric_tangents_touch_optimum(self):
        pair = ncp_bounds_high_tern(ONES, OperatingPoint(1, 1))
        assert pair.upper == pytest.approx(0.5 * LN3, abs=1e-12)
        assert pair.lower == pytest.approx(0.5 * LN2, abs=1e-12)
        assert pair.beta_at_bound == pytest.approx(0.5, abs=1e-12)

    def test_equal_gains_give_share_one_over_k_plus_one(self):
        for k in (0.3, 1.0, 4.0):
            pair = ncp_bounds_high_tern(LinkGains(1, 2.5, 2.5), OperatingPoint(7.0, k))
            assert pair.beta_at_bound == pytest.approx(1.0 / (k + 1.0), rel=1e-12)

    def test_sandwich_spot(self):
        gains, op = LinkGains(1, 1, 2), OperatingPoint(100, 1)
        exact = ncp_allocate(gains, op).base_rate
        pair = ncp_bounds_high_tern(gains, op)
        assert pair.lower == pytest.approx(2.4676690, abs=1e-6)
        assert pair.upper == pytest.approx(2.8115464, abs=1e-6)
        assert pair.lower <= exact <= pair.upper


class TestCpHighTern:
    def test_chord_lower_closed_form(self):
        pair = cp_bounds_high_tern(ONES, OperatingPoint(1, 1))
        assert pair.lower == pytest.approx(LN2 / 3.0, abs=1e-12)

    def test_tangent_tight_at_high_tern(self):
        op = OperatingPoint(1e6, 1)
        exact = cp_allocate(ONES, op).base_rate
        pair = cp_bounds_high_tern(ONES, op)
        assert exact <= pair.upper
        assert pair.upper / exact == pytest.approx(1.0, abs=2e-2)

    def test_construction_share_tends_to_one_over_k_plus_two(self):
        # the offset decays like ln(k/(k+1))/ln(eps), so convergence is slow
        for k in (0.5, 1.0, 10.0):
            betas = [cp_bounds_high_tern(LinkGains(2, 1, 2), OperatingPoint(e, k)).beta_at_bound
                     for e in (1e4, 1e8, 1e12)]
            targets = [abs(b - 1.0 / (k + 2.0)) for b in betas]
            assert all(x > y for x, y in zip(targets, targets[1:]))
            assert targets[-1] < 1e-2


class TestNcpLowTern:
    def test_tight_pair_at_low_tern(self):
        gains, op = LinkGains(1, 1, 2), OperatingPoint(1e-3, 1)
        pair = ncp_bounds_low_tern(gains, op)
        exact = ncp_allocate(gains, op).base_rate
        assert pair.lower == pytest.approx(9.99499e-4, abs=1e-8)
        assert pair.upper == pytest.approx(math.log1p(1e-3), abs=1e-15)
        assert pair.lower <= exact <= pair.upper
        assert pair.beta_at_bound == pytest.approx(0.998001, abs=1e-6)
        assert not pair.degenerate

    def test_equal_gain_degeneracy_falls_back_to_linear(self):
        pair = ncp_bounds_low_tern(ONES, OperatingPoint(1e-3, 1))
        assert pair.degenerate
        assert pair.beta_at_bound == pytest.approx(0.5, rel=1e-12)
        assert pair.upper == pytest.approx(math.log1p(1e-3), abs=1e-15)
        exact = ncp_allocate(ONES, OperatingPoint(1e-3, 1)).base_rate
        assert pair.lower <= exact <= pair.upper

    def test_loose_but_valid_at_high_tern(self):
        gains, op = LinkGains(1, 1, 2), OperatingPoint(10, 1)
        pair = ncp_bounds_low_tern(gains, op)
        exact = ncp_allocate(gains, op).base_rate
        assert pair.lower <= exact <= pair.upper
        assert pair.lower == 0.0  # parabola construction clamps at zero here


class TestCpLowTern:
    def test_tight_at_low_tern(self):
        gains, op = LinkGains(1, 1, 4), OperatingPoint(1e-4, 1)
        pair = cp_bounds_low_tern(gains, op)
        assert pair.upper == pytest.approx(1e-4, rel=1e-4)
        assert pair.lower == pytest.approx(pair.upper, rel=1e-3)
        exact = cp_allocate(gains, op).base_rate
        assert pair.lower <= exact <= pair.upper

    def test_forced_degeneracy(self):
        # h12 == k*h23/(k+1) exactly
        pair = cp_bounds_low_tern(LinkGains(1.0, 1.0, 2.0), OperatingPoint(1e-3, 1))
        assert pair.degenerate

    def test_sandwich_spot_at_unit_tern(self):
        pair = cp_bounds_low_tern(ONES, OperatingPoint(1, 1))
        exact = cp_allocate(ONES, OperatingPoint(1, 1)).base_rate
        assert exact == pytest.approx(0.328098, abs=1e-6)
        assert pair.lower <= exact <= pair.upper


class TestSandwichGrid:
    def test_full_grid_has_no_violations(self):
        checked, violations = sandwich_violations()
        assert checked == len(GRID_GAINS) ** 3 * len(GRID_EPS) * len(GRID_K) * 4
        assert violations == 0


class TestLimits:
    def test_low_tern_gain_limit_values(self):
        assert low_tern_gain_limit(LinkGains(8, 1, 8), 1.0) == 4.0
        assert low_tern_gain_limit(LinkGains(3, 3, 3), 2.0) == pytest.approx(2.0 / 3.0)
        assert low_tern_gain_limit(LinkGains(0.1, 1, 10), 1.0) == pytest.approx(0.1)

    def test_high_tern_gain_limit_values(self):
        assert high_tern_gain_limit(1.0) == pytest.approx(2.0 / 3.0)
        assert high_tern_gain_limit(0.1) == pytest.approx(1.1 / 2.1)
        ks = [1.0, 10.0, 100.0, 1000.0]
        values = [high_tern_gain_limit(k) for k in ks]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(1.0, abs=2e-3)

    def test_small_k_slope_values(self):
        assert small_k_gain_slope(ONES, 1.0) == pytest.approx(1.0 / LN2, rel=1e-12)
        # ln(1+x) ~ x makes the slope approach h23/h13
        assert small_k_gain_slope(LinkGains(1, 1e-4, 2), 1.0) == pytest.approx(
            2.0 / 1e-4, rel=1e-3)

    def test_small_k_slope_matches_solver(self):
        slope = small_k_gain_slope(ONES, 1.0)
        gain = collaboration_gain(ONES, OperatingPoint(1.0, 1e-4)).gain
        assert gain / 1e-4 == pytest.approx(slope, rel=1e-2)

    def test_limit_attainment_low(self):
        rng = random.Random(5)
        for _ in range(10):
            gains = LinkGains(*(math.exp(rng.uniform(math.log(0.1), math.log(10)))
                                for _ in range(3)))
            for k in GRID_K:
                gain = collaboration_gain(gains, OperatingPoint(1e-6, k)).gain
                assert gain == pytest.approx(low_tern_gain_limit(gains, k), rel=1e-3)

    def test_limit_attainment_high_at_unit_ratio(self):
        gain = collaboration_gain(ONES, OperatingPoint(1e8, 1.0)).gain
        assert gain == pytest.approx(high_tern_gain_limit(1.0), rel=1e-2)

    def test_large_k_gain_approaches_one(self):
        gain = collaboration_gain(ONES, OperatingPoint(1.0, 1e4)).gain
        assert abs(gain - 1.0) <= 0.01

    def test_small_k_prefers_direct(self):
        assert collaboration_gain(ONES, OperatingPoint(1.0, 1e-3)).gain < 1.0


class TestTangentConstruction:
    def test_gap_series_matches_direct_form(self):
        for c in (1e-7, 1e-5, 9.9e-5, 1.1e-4, 1e-3, 0.1):
            direct = math.log1p(c) - c / (1.0 + c)
            assert _tangent_gap(c) == pytest.approx(direct, rel=1e-7)

    def test_intersection_reproduces_closed_form(self):
        # the tangent line of user 1 evaluated at the intersection share must
        # return exactly the closed-form upper bound
        rng = random.Random(17)
        for _ in range(50):
            h13 = math.exp(rng.uniform(math.log(0.25), math.log(4)))
            h23 = math.exp(rng.uniform(math.log(0.25), math.log(4)))
            eps = 10 ** rng.uniform(-2, 2)
            k = 10 ** rng.uniform(-1, 1)
            beta, upper = _tangent_construction(h13, h23, eps, k, k)
            a = (k + 1.0) * h13 * eps
            tangent = math.log1p(a) / (k + 1.0) + (beta - 1.0 / (k + 1.0)) * _tangent_gap(a)
            assert tangent == pytest.approx(upper, rel=1e-9)
