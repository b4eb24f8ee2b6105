"""Contour geometry, w branch bookkeeping, moments, Cauchy evaluation."""
import pytest
from mpmath import mp, mpc, mpf, sqrt

from padesurf.contour import (IntervalContour, f_rho_coefficients, f_rho_eval,
                              f_rho_trace, make_weight, sokhotski_check,
                              unit_weight, w_delta_eval, w_delta_trace)
from padesurf.errors import OnCut, WeightDomainError

from conftest import rand_mpf, seeded_rng


class TestGeometry:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            IntervalContour.from_endpoints([(0, 1), (0.5, 2)])
        with pytest.raises(ValueError):
            IntervalContour.from_endpoints([(1, -1)])

    def test_branch_point_count(self, two_intervals):
        assert two_intervals.genus == 1
        assert len(two_intervals.branch_points) == 2 * (two_intervals.genus + 1)

    def test_gaps(self, three_intervals):
        gaps = three_intervals.gaps
        assert len(gaps) == 2
        assert float(gaps[0][0]) == -2 and float(gaps[0][1]) == -1


class TestW:
    def test_segment_at_two(self, segment, ctx):
        with ctx.work():
            assert abs(w_delta_eval(segment, 2) - sqrt(3)) < ctx.tolerance

    def test_interior_trace(self, segment, ctx):
        with ctx.work():
            for x in ("-0.77", "0.0", "0.4"):
                x = mpf(x)
                tr = w_delta_trace(segment, x)
                assert abs(tr.value_plus - mpc(0, 1) * sqrt(1 - x * x)) < ctx.tolerance
                assert abs(tr.value_plus + tr.value_minus) == 0

    def test_gap_midpoint_modulus(self, ctx):
        a = mpf("0.25")
        c = IntervalContour.from_endpoints([(-1, "-0.25"), ("0.25", 1)])
        with ctx.work():
            assert abs(abs(w_delta_eval(c, 0)) - a) < ctx.tolerance

    def test_square_matches_product(self, two_intervals, ctx):
        rng = seeded_rng("w-square")
        with ctx.work():
            for _ in range(100):
                z = mpc(rand_mpf(rng, -3, 3), rand_mpf(rng, -3, 3))
                if two_intervals.distance(z) < mpf("0.05"):
                    continue
                w = w_delta_eval(two_intervals, z)
                prod = mpc(1)
                for e in two_intervals.branch_points:
                    prod *= z - e
                assert abs(w * w - prod) <= ctx.tolerance * max(mpf(1), abs(prod))

    def test_normalization_at_infinity(self, three_intervals, ctx):
        with ctx.work():
            z = mpc("1e9")
            g = three_intervals.genus
            assert abs(w_delta_eval(three_intervals, z) / z ** (g + 1) - 1) < mpf("1e-8")

    def test_on_cut_raises(self, segment):
        with pytest.raises(OnCut):
            w_delta_eval(segment, mpf("0.5"))


class TestWeight:
    def test_zero_too_close_rejected(self, segment, ctx):
        with pytest.raises(WeightDomainError):
            make_weight("polynomial", segment, ["-1.01", 1], ctx=ctx)

    def test_pole_too_close_rejected(self, segment, ctx):
        with pytest.raises(WeightDomainError):
            make_weight("rational", segment, [1], den_coeffs=["1.02", 1], ctx=ctx)

    def test_exp_polynomial_never_vanishes(self, segment, ctx):
        w = make_weight("exp-polynomial", segment, [0, "0.3"], ctx=ctx)
        with ctx.work():
            assert abs(w.eval(mpf("0.5")) - mp.exp(mpf("0.15"))) < ctx.tolerance

    def test_log_branch_continuous(self, segment, ctx):
        # rho = t - 2 - i/4 winds in the complex plane; branch must not jump
        w = make_weight("polynomial", segment, [mpc(-2, "-0.25"), 1], ctx=ctx)
        with ctx.work():
            xs = [mpf(-1) + mpf(k) / 50 * 2 for k in range(1, 50)]
            vals = [w.log_on_component(0, x) for x in xs]
            for a, b in zip(vals, vals[1:]):
                assert abs(b - a) < mpf("0.5")
            for x, v in zip(xs, vals):
                assert abs(mp.exp(v) - w.eval(x)) < ctx.tolerance


class TestMoments:
    def test_chebyshev_closed_form(self, segment, unit_rho, ctx):
        f = f_rho_coefficients(segment, unit_rho, 6, ctx)
        with ctx.work():
            assert f[0] == 0
            assert abs(f[1] - mpf(1) / 2) < ctx.tolerance
            assert abs(f[2]) < ctx.tolerance
            assert abs(f[3] - mpf(1) / 4) < ctx.tolerance
            assert abs(f[5] - mpf(3) / 16) < ctx.tolerance

    def test_reality_for_real_data(self, two_intervals, ctx):
        rho = make_weight("polynomial", two_intervals, [-3, 1], ctx=ctx)
        f = f_rho_coefficients(two_intervals, rho, 12, ctx)
        with ctx.work():
            assert all(abs(mp.im(v)) < ctx.tolerance for v in f)

    def test_shifted_weight_against_partial_fraction(self, segment, shifted_rho, ctx):
        # rho = t-2: f(z) = (z-2)/(2 sqrt(z^2-1)) - 1/2, expanded at infinity
        f = f_rho_coefficients(segment, shifted_rho, 10, ctx)
        with ctx.work():
            z = mpf(3)
            direct = mp.fsum(f[k] * z ** -k for k in range(len(f)))
            closed = (z - 2) / (2 * sqrt(z * z - 1)) - mpf(1) / 2
            tail = abs(f[-1]) * z ** mpf(-(len(f) - 1)) * 2
            assert abs(direct - closed) < tail + mpf("1e-30")


class TestCauchyEval:
    def test_closed_form_far(self, segment, unit_rho, ctx):
        with ctx.work():
            got = f_rho_eval(segment, unit_rho, 2, ctx)
            assert abs(got - 1 / (2 * sqrt(3))) < ctx.tolerance

    def test_leading_moment_at_large_z(self, segment, unit_rho, ctx):
        with ctx.work():
            z = mpf("1e8")
            got = f_rho_eval(segment, unit_rho, z, ctx)
            assert abs(got - mpf(1) / (2 * z)) < mpf("1e-24")

    def test_schwarz_reflection(self, segment, shifted_rho, ctx):
        with ctx.work():
            z = mpc("0.7", "0.9")
            a = f_rho_eval(segment, shifted_rho, z, ctx)
            b = f_rho_eval(segment, shifted_rho, mp.conj(z), ctx)
            assert abs(mp.conj(b) - a) < ctx.tolerance

    def test_near_cut_matches_far_formula(self, segment, shifted_rho, ctx):
        # rectangle route must agree with the closed form near the cut
        with ctx.work():
            z = mpc("0.3", "1e-9")
            got = f_rho_eval(segment, shifted_rho, z, ctx)
            closed = (z - 2) / (2 * sqrt(z - 1) / sqrt(-z - 1) / mpc(0, 1)) if False else \
                (z - 2) / (2 * (sqrt(z - 1) * sqrt(z + 1))) - mpf(1) / 2
            assert abs(got - closed) < mpf("1e-40")

    def test_trace_pair(self, segment, unit_rho, ctx):
        with ctx.work():
            tr = f_rho_trace(segment, unit_rho, mpf("0.0"), ctx)
            # f+- = -+ i/2 ... from closed form 1/(2 sqrt(z^2-1))
            assert abs(tr.value_plus - mpc(0, "-0.5")) < mpf("1e-30")
            assert abs(tr.value_minus - mpc(0, "0.5")) < mpf("1e-30")


class TestSokhotski:
    def test_unit_weight_at_zero(self, segment, unit_rho, ctx):
        assert sokhotski_check(segment, unit_rho, 0, ctx) < mpf("1e-10")

    def test_first_order_in_delta(self, segment, shifted_rho, ctx):
        r1 = sokhotski_check(segment, shifted_rho, mpf("0.5"), ctx, delta=mpf("1e-4"))
        r2 = sokhotski_check(segment, shifted_rho, mpf("0.5"), ctx, delta=mpf("1e-5"))
        assert r2 < r1 / 5  # observed order >= 1

    def test_shifted_weight_closed_form(self, segment, shifted_rho, ctx):
        with ctx.work():
            x = mpf("0.5")
            r = sokhotski_check(segment, shifted_rho, x, ctx, delta=mpf("1e-12"))
            assert r < mpf("1e-10")
