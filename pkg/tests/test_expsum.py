import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from zetabound import expsum, vinogradov

from oracles import sweep_listing


class TestBreakpoints:
    def test_partition_shape(self):
        bps = expsum.breakpoints(84.0, 220.0)
        assert bps[0] == 84.0 and bps[-1] == 220.0
        assert all(b > a for a, b in zip(bps, bps[1:]))

    def test_floor_quantities_constant_inside(self):
        cfg = expsum.OptimizerConfig()
        bps = expsum.breakpoints(84.0, 220.0, cfg)
        eps = 1e-9
        for a, b in zip(bps[:-1], bps[1:]):
            for quantity in (
                lambda lam: math.floor(lam / (1.0 - cfg.mu1)),
                lambda lam: math.floor(lam / (1.0 - cfg.mu2)),
                lambda lam: int(lam / (1.0 - cfg.mu1 - cfg.mu2) + 0.000003),
            ):
                assert quantity(a + eps) == quantity(b - eps)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            expsum.breakpoints(10.0, 220.0)
        with pytest.raises(ValueError):
            expsum.breakpoints(220.0, 84.0)


class TestLookup:
    def test_matches_certified_table(self):
        for lo, hi, rho, th in vinogradov.RHO_THETA_TABLE:
            for k in (lo, hi if hi is not None else 10 ** 6):
                assert expsum.rho_theta_lookup(k) == (rho, th)

    def test_bucket_edges(self):
        assert expsum.rho_theta_lookup(137) != expsum.rho_theta_lookup(138)
        assert expsum.rho_theta_lookup(89999) != expsum.rho_theta_lookup(90000)
        with pytest.raises(ValueError):
            expsum.rho_theta_lookup(128)


class TestIntervalEval:
    def test_known_binding_witness(self):
        iv = expsum.make_interval(116.856, 117.3775)
        out = expsum.interval_eval(iv, 146, 139, 368)
        assert out.viable
        assert out.u == pytest.approx(132.943570, abs=1e-4)

    def test_nonviable_reported_not_raised(self):
        iv = expsum.make_interval(116.856, 117.3775)
        out = expsum.interval_eval(iv, 146, 139, 5000)
        assert not out.viable

    def test_t_validation(self):
        iv = expsum.make_interval(116.856, 117.3775)
        with pytest.raises(ValueError):
            expsum.interval_eval(iv, 100, 102, 368)


class TestSweep:
    def test_global_maxima(self, sweep_result):
        result, elapsed = sweep_result
        assert result.max_u == pytest.approx(132.943570, abs=1e-5)
        assert result.max_c == pytest.approx(8.763250, abs=1e-5)
        assert result.max_c <= expsum.SNT_CONSTANT
        assert result.max_u <= expsum.SNT_DENOM
        assert elapsed < 30.0

    def test_binding_interval_witness(self, sweep_result):
        result, _ = sweep_result
        b = result.binding
        assert (b.g, b.h, b.s) == (146, 139, 368)
        assert b.lam1 == pytest.approx(116.856, abs=1e-3)

    def test_all_intervals_feasible(self, sweep_result):
        result, _ = sweep_result
        assert all(iv.feasible for iv in result.intervals)
        assert len(result.intervals) == 539

    def test_witness_reevaluation_is_bit_identical(self, sweep_result):
        result, _ = sweep_result
        for iv in result.intervals[::25]:
            out = expsum.interval_eval(iv, iv.g, iv.h, iv.s)
            assert out.u == iv.u
            assert out.C == iv.C

    def test_degree_constant_inequality(self, sweep_result):
        # (5r)^k <= lam2^(4.65 lam2) on every interval, in log form
        result, _ = sweep_result
        for iv in result.intervals:
            assert iv.k * math.log(5.0 * iv.r) \
                <= 4.65 * iv.lam2 * math.log(iv.lam2)

    def test_matches_listing_oracle_maxima(self, sweep_result):
        result, _ = sweep_result
        max_u_o, max_c_o = sweep_listing(84.0, 220.0)
        assert result.max_u == pytest.approx(max_u_o, rel=1e-9)
        assert result.max_c == pytest.approx(max_c_o, rel=1e-9)

    def test_below_84_leaves_the_certified_degree_range(self):
        # just below 84 the implied degree drops under the first certified
        # bucket, so the exponent lookup refuses
        with pytest.raises(ValueError):
            expsum.sweep(83.0, 84.0)


class TestLargeLambda:
    def test_f_corner_frozen_value(self):
        # high-precision reference for the limit instantiation
        f = expsum.f_large(expsum.LargeLambdaParams())
        assert f == pytest.approx(-0.024287046007, abs=1e-11)

    def test_finite_lambda_brackets_limit(self):
        f_inf = expsum.f_large(expsum.LargeLambdaParams())
        f_220 = expsum.f_large(expsum.LargeLambdaParams(lam=220.0))
        assert f_220 > f_inf  # the conservative bracket is weaker

    def test_box_validation(self):
        with pytest.raises(ValueError):
            expsum.LargeLambdaParams(gamma=1.19)
        with pytest.raises(ValueError):
            expsum.LargeLambdaParams(phi=1.24)

    def test_check_reports_known_split(self):
        reports = {r.name: r for r in expsum.large_lambda_check()}
        assert reports["large_lambda_G1[lam=220]"].passed
        assert reports["large_lambda_G2[lam=limit]"].passed
        # documented discrepancy: the published corner value is ~5e-10 below
        # anything the printed formula yields, so these two stay red
        assert not reports["large_lambda_f_corner[lam=limit]"].passed
        assert abs(reports["large_lambda_f_corner[lam=limit]"].margin) < 1e-9
        assert not reports["large_lambda_final_chain[lam=limit]"].passed
        assert abs(reports["large_lambda_final_chain[lam=limit]"].margin) < 1e-9


class TestAuxiliaryBounds:
    def test_wj_trivial_vs_refined(self):
        trivial = 2.0 * 100.0 * 3.0 ** 2
        assert expsum.wj_bound(2, 100.0, 1e6, 10.0, 3.0, 1e4, 1e5) <= trivial

    def test_wj_validation(self):
        with pytest.raises(ValueError):
            expsum.wj_bound(0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            expsum.wj_bound(1, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0)

    def test_incomplete_system_happy_path(self):
        g, h, t = 146, 139, 8
        s = 368
        eta = 5e-4
        d = 10.5
        log_p = d * g * g * 1.01
        log_a, e_val = expsum.incomplete_system_bound(g, h, s, t, log_p, eta, d)
        assert math.isfinite(log_a) and math.isfinite(e_val)

    @pytest.mark.parametrize("mutation", [
        dict(g=59), dict(h=100), dict(s=10 ** 6), dict(eta=1.0),
        dict(d=5.0), dict(log_p=1.0),
    ])
    def test_incomplete_system_hypothesis_violations(self, mutation):
        params = dict(g=146, h=139, s=368, t=8,
                      log_p=10.5 * 146 * 146 * 1.01,
                      eta=5e-4, d=10.5)
        params.update(mutation)
        with pytest.raises(expsum.HypothesisViolation):
            expsum.incomplete_system_bound(**params)


class TestPartialSumOracle:
    def test_bruteforce_tiny_case(self):
        # t -> 0 makes every summand 1, so the supremum is the longest run
        val = expsum.snt_bruteforce(5, 1e-9)
        assert val == pytest.approx(6.0, abs=1e-6)

    def test_bound_dominates_randomized(self):
        rng = random.Random(12345)
        for _ in range(50):
            n = rng.randint(2, 200)
            t = rng.uniform(n, 1e5)
            assert expsum.snt_bound(n, t) >= expsum.snt_bruteforce(n, t)

    def test_validation(self):
        with pytest.raises(ValueError):
            expsum.snt_bruteforce(1, 10.0)
        with pytest.raises(ValueError):
            expsum.snt_bruteforce(100, 1e7)
        with pytest.raises(ValueError):
            expsum.snt_bound(100, 10.0)

    @given(st.integers(min_value=2, max_value=500),
           st.floats(min_value=1.0, max_value=200.0))
    @settings(max_examples=50, deadline=None)
    def test_bound_monotone_shape(self, n, mult):
        t = n * mult
        val = expsum.snt_bound(n, t)
        assert 0.0 < val <= expsum.SNT_CONSTANT * n
