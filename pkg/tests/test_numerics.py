import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stefan_chain.errors import InvalidParams, MaxIterExceeded, NoSignChange, SubdivisionLimit
from stefan_chain.numerics import (Interval, ToleranceSpec, bisect, central_diff, default_step, erf, erfc,
                                   integrate)

mpmath.mp.dps = 40


def test_interval_rejects_empty_and_infinite():
    with pytest.raises(InvalidParams):
        Interval(1.0, 1.0)
    with pytest.raises(InvalidParams):
        Interval(0.0, math.inf)
    assert Interval(-1.0, 2.0).width == 3.0


def test_tolerance_needs_one_positive_bound():
    with pytest.raises(InvalidParams):
        ToleranceSpec(abs_tol=0.0, rel_tol=0.0)
    with pytest.raises(InvalidParams):
        ToleranceSpec(max_iter=0)
    ToleranceSpec(abs_tol=0.0, rel_tol=1e-12)


class TestErf:
    def test_zero(self):
        assert erf(0.0) == 0.0

    def test_half_matches_high_precision(self):
        assert erf(0.5) == pytest.approx(float(mpmath.erf(mpmath.mpf("0.5"))), abs=1e-15)
        assert str(erf(0.5)).startswith("0.5204998778")

    def test_negative_half(self):
        assert erf(-0.5) == -erf(0.5)

    def test_saturates(self):
        assert erf(6.0) == 1.0 and erf(-7.5) == -1.0 and erf(1e300) == 1.0

    def test_nan_propagates(self):
        assert math.isnan(erf(math.nan))

    @pytest.mark.parametrize("x", [1e-300, 1e-8, 0.1, 0.9, 1.5, 1.999, 2.0, 2.001, 2.5, 3.7, 4.5, 5.9])
    def test_absolute_error_below_1e14(self, x):
        assert abs(erf(x) - float(mpmath.erf(x))) <= 1e-14

    def test_dense_sweep_against_mpmath(self):
        worst = max(abs(erf(k / 500.0) - float(mpmath.erf(k / 500.0))) for k in range(0, 3001))
        assert worst <= 1e-14

    @pytest.mark.parametrize("x", [0.3, 2.5, 4.0, 10.0, 26.0])
    def test_erfc_relative_accuracy(self, x):
        ref = float(mpmath.erfc(x))
        assert erfc(x) == pytest.approx(ref, rel=1e-13)

    @given(st.floats(min_value=-8, max_value=8, allow_nan=False))
    def test_odd(self, x):
        assert erf(-x) == -erf(x)

    @given(st.lists(st.floats(min_value=-6, max_value=6, allow_nan=False), min_size=2, max_size=40))
    def test_monotone(self, xs):
        xs = sorted(xs)
        vals = [erf(x) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestBisect:
    def test_linear(self):
        assert bisect(lambda x: x - 1.0, Interval(0.0, 2.0)) == 1.0

    def test_sqrt_two(self):
        r = bisect(lambda x: x * x - 2.0, Interval(1.0, 2.0), ToleranceSpec(abs_tol=1e-15))
        assert abs(r * r - 2.0) < 1e-12

    def test_no_root(self):
        with pytest.raises(NoSignChange):
            bisect(lambda x: x * x + 1.0, Interval(0.0, 1.0))

    def test_endpoint_zero_returned(self):
        assert bisect(lambda x: x, Interval(0.0, 1.0)) == 0.0

    def test_iteration_cap(self):
        with pytest.raises(MaxIterExceeded):
            bisect(lambda x: x - 0.3, Interval(0.0, 1.0), ToleranceSpec(abs_tol=1e-15, max_iter=5))

    def test_relative_tolerance(self):
        r = bisect(lambda x: x - 1e6 - 0.5, Interval(0.0, 2e6), ToleranceSpec(abs_tol=0.0, rel_tol=1e-12))
        assert abs(r - 1e6 - 0.5) <= 1e-12 * 1e6 * 2

    @given(st.floats(min_value=-50, max_value=50, allow_nan=False),
           st.floats(min_value=0.01, max_value=10), st.floats(min_value=0.01, max_value=10))
    def test_result_inside_bracket(self, root, left, right):
        lo, hi = root - left, root + right
        r = bisect(lambda x: math.tanh(x - root), Interval(lo, hi))
        assert lo <= r <= hi
        assert abs(r - root) <= 1e-12 * max(1.0, abs(root))


class TestIntegrate:
    def test_constant(self):
        assert integrate(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_quadratic(self):
        assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-14)

    def test_gaussian_against_erf(self):
        ref = 0.5 * math.sqrt(math.pi) * erf(1.0)
        assert integrate(lambda x: math.exp(-x * x), 0.0, 1.0) == pytest.approx(ref, abs=1e-12)
        assert str(ref).startswith("0.7468241")

    def test_empty_and_reversed(self):
        assert integrate(math.sin, 2.0, 2.0) == 0.0
        with pytest.raises(InvalidParams):
            integrate(math.sin, 1.0, 0.0)

    def test_depth_budget(self):
        with pytest.raises(SubdivisionLimit):
            integrate(lambda x: math.sin(1.0 / x) if x else 0.0, 0.0, 1.0, ToleranceSpec(abs_tol=1e-300))

    @settings(max_examples=30)
    @given(st.floats(min_value=-2, max_value=2), st.floats(min_value=0.1, max_value=3),
           st.floats(min_value=-1, max_value=1), st.floats(min_value=-1, max_value=1),
           st.floats(min_value=0.1, max_value=2), st.floats(min_value=0.1, max_value=2))
    def test_additive(self, a, k, c0, c1, left, right):
        def f(x):
            return c0 * math.sin(k * x) + c1 * math.exp(-x * x)

        tol = ToleranceSpec(abs_tol=1e-10)
        b, c = a + left, a + left + right
        gap = integrate(f, a, b, tol) + integrate(f, b, c, tol) - integrate(f, a, c, tol)
        assert abs(gap) <= 3 * tol.abs_tol


class TestCentralDiff:
    def test_quadratic_first(self):
        assert central_diff(lambda x: x * x, 3.0, 1, 1e-4) == pytest.approx(6.0, abs=1e-7)

    def test_sine_second(self):
        assert abs(central_diff(math.sin, 0.0, 2, 1e-3)) <= 1e-6

    def test_exp_third(self):
        assert central_diff(math.exp, 0.0, 3, 1e-2) == pytest.approx(1.0, abs=1e-3)

    def test_default_steps(self):
        assert central_diff(math.sin, 0.3) == pytest.approx(math.cos(0.3), abs=1e-9)
        assert default_step(10.0, 1) == pytest.approx(10.0 * default_step(0.0, 1))
        assert default_step(0.0, 3) > default_step(0.0, 2) > default_step(0.0, 1)

    def test_bad_order_and_step(self):
        with pytest.raises(InvalidParams):
            central_diff(math.sin, 0.0, 4)
        with pytest.raises(InvalidParams):
            central_diff(math.sin, 0.0, 1, -1.0)

    @pytest.mark.parametrize("order, exact", [(1, math.cos(0.7)), (2, -math.sin(0.7)), (3, -math.cos(0.7))])
    def test_second_order_convergence(self, order, exact):
        hs = [0.1, 0.05, 0.025, 0.0125]
        errs = [abs(central_diff(math.sin, 0.7, order, h) - exact) for h in hs]
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        assert all(o >= 1.8 for o in orders)
