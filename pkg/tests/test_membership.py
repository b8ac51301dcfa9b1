import math

import pytest
from hypothesis import given, strategies as st

from tsuka import DefinitionError, InputDomainError, MembershipFunction, Shape, falling, rising


# Bounds stay well scaled (width not vanishing against the offset) so the
# 1e-12 degree tolerances below are meaningful in double precision: the
# inversion point carries an absolute error near ulp(offset)/2, which the
# forward evaluation divides by the width, so offset/width must stay under
# roughly 4e3 for a 1e-12 guarantee.
def intervals(min_width=0.5, bound=1e3):
    return st.tuples(
        st.floats(min_value=-bound, max_value=bound),
        st.floats(min_value=min_width, max_value=2 * bound),
    ).map(lambda t: (t[0], t[0] + t[1]))


def functions():
    return st.tuples(st.sampled_from(list(Shape)), intervals()).map(
        lambda t: MembershipFunction(t[0], t[1][0], t[1][1])
    )


class TestConstruction:
    def test_zero_width_rejected(self):
        with pytest.raises(DefinitionError):
            falling(3.0, 3.0)

    def test_inverted_bounds_rejected(self):
        with pytest.raises(DefinitionError):
            rising(10.0, 0.0)

    @pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
    def test_nonfinite_bounds_rejected(self, bad):
        with pytest.raises(DefinitionError):
            falling(0.0, bad)


class TestEvaluate:
    def test_falling_interior(self):
        assert falling(0, 10).evaluate(5) == 0.5

    def test_falling_lower_boundary_is_full(self):
        assert falling(0, 10).evaluate(0) == 1.0

    def test_rising_upper_saturation(self):
        assert rising(0, 10).evaluate(10) == 1.0

    def test_falling_clamps_above(self):
        assert falling(0, 10).evaluate(12) == 0.0

    def test_rejects_nonfinite_input(self):
        with pytest.raises(InputDomainError):
            falling(0, 10).evaluate(math.nan)

    @given(functions(), st.floats(min_value=-1e5, max_value=1e5))
    def test_range(self, f, x):
        assert 0.0 <= f.evaluate(x) <= 1.0

    @given(functions(), st.lists(st.floats(min_value=-1e5, max_value=1e5), min_size=2))
    def test_monotone(self, f, xs):
        ys = [f.evaluate(x) for x in sorted(xs)]
        if f.shape is Shape.FALLING:
            assert all(a >= b for a, b in zip(ys, ys[1:]))
        else:
            assert all(a <= b for a, b in zip(ys, ys[1:]))

    @given(intervals(), st.floats(min_value=0.0, max_value=1.0))
    def test_complementary_pair_sums_to_one(self, bounds, t):
        lo, hi = bounds
        x = lo + t * (hi - lo)
        total = falling(lo, hi).evaluate(x) + rising(lo, hi).evaluate(x)
        assert abs(total - 1.0) <= 1e-12


class TestInvert:
    def test_rising_midpoint(self):
        assert rising(0, 100).invert(0.5) == 50.0

    def test_falling_full_membership_at_left(self):
        assert falling(0, 100).invert(1.0) == 0.0

    def test_rising_quarter(self):
        # solve (x - 20) / 60 = 0.25 -> confirmed by scalar root finding
        assert rising(20, 80).invert(0.25) == 35.0

    @pytest.mark.parametrize("alpha", [-0.1, 1.1, math.nan])
    def test_rejects_out_of_range_degree(self, alpha):
        with pytest.raises(InputDomainError):
            rising(0, 1).invert(alpha)

    @given(functions(), st.floats(min_value=0.0, max_value=1.0))
    def test_result_within_bounds(self, f, alpha):
        assert f.x_min <= f.invert(alpha) <= f.x_max

    @given(functions(), st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
    def test_round_trip(self, f, alpha):
        assert abs(f.evaluate(f.invert(alpha)) - alpha) <= 1e-12

    def test_endpoints_stay_exact(self):
        f = rising(0, 100)
        assert f.invert(0.0) == 0.0
        assert f.invert(1.0) == 100.0
