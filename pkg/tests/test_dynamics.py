import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from fuzzytoc.dynamics import (
    Arc,
    BangBangPlan,
    ControlSign,
    DegenerateGeometryError,
    arc_end,
    clockwise_angle,
    plan_endpoint,
    simulate_plan,
)

coord = st.floats(-10, 10, allow_nan=False)
signs = st.sampled_from([-1, 1])


def integrate(p, u, duration):
    """Reference trajectory of x1' = x2, x2' = -x1 + u by high-accuracy RK."""
    sol = solve_ivp(lambda t, x: [x[1], -x[0] + u], (0.0, duration), p,
                    method="DOP853", rtol=1e-13, atol=1e-13)
    return sol.y[:, -1]


class TestArcEnd:
    def test_half_turn_about_K(self):
        np.testing.assert_allclose(arc_end((0, 0), -1, math.pi), (-2, 0), atol=1e-15)

    def test_full_turn(self):
        np.testing.assert_allclose(arc_end((3, 1), 1, 2 * math.pi), (3, 1), atol=1e-14)

    def test_eighth_turn_about_K(self):
        # (0, 1) sits at radius sqrt(2) from K, 45 degrees above the axis
        expected = (-1 + math.sqrt(2), 0.0)
        np.testing.assert_allclose(integrate([0.0, 1.0], -1, math.pi / 4), expected, atol=1e-10)
        np.testing.assert_allclose(arc_end((0, 1), -1, math.pi / 4), expected, atol=1e-15)

    def test_broadcasts(self):
        pts = np.array([[0.0, 0.0], [1.0, 2.0]])
        out = arc_end(pts, -1, np.array([math.pi, 0.0]))
        np.testing.assert_allclose(out, [[-2, 0], [1, 2]], atol=1e-15)

    @given(coord, coord, signs, st.floats(0, 4 * math.pi))
    def test_isometry(self, x, y, s, d):
        end = arc_end((x, y), s, d)
        assert math.hypot(end[0] - s, end[1]) == pytest.approx(math.hypot(x - s, y), abs=1e-12)

    @given(coord, coord, signs)
    def test_periodicity(self, x, y, s):
        np.testing.assert_allclose(arc_end((x, y), s, 2 * math.pi), (x, y), atol=1e-12)

    @given(coord, coord, signs, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
    def test_composition(self, x, y, s, d1, d2):
        two = arc_end(arc_end((x, y), s, d1), s, d2)
        np.testing.assert_allclose(two, arc_end((x, y), s, d1 + d2), atol=1e-12)

    @pytest.mark.parametrize("u", [-1, 1])
    @pytest.mark.parametrize("duration", [0.3, math.pi / 2, 2.5, math.pi, 5.0, 2 * math.pi])
    def test_matches_ode(self, u, duration):
        for x in np.linspace(-4, 4, 5):
            for y in np.linspace(-3, 3, 4):
                ref = integrate([x, y], u, duration)
                np.testing.assert_allclose(arc_end((x, y), u, duration), ref, atol=1e-8)


class TestClockwiseAngle:
    def test_quarter_turn(self):
        assert clockwise_angle((-1, 0), (0, 0), (-1, -1)) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_coincident_rays(self):
        assert clockwise_angle((0, 0), (1, 0), (1, 0)) == 0.0

    def test_first_arc_of_crisp_transfer(self):
        # angle of K->(-5,3) is atan2(3,-4); K->(4,0) lies on the positive axis
        assert clockwise_angle((-1, 0), (-5, 3), (4, 0)) == pytest.approx(math.atan2(3, -4), abs=1e-15)
        assert clockwise_angle((-1, 0), (-5, 3), (4, 0)) == pytest.approx(2.49809, abs=1e-5)

    def test_degenerate(self):
        with pytest.raises(DegenerateGeometryError):
            clockwise_angle((1, 0), (1, 0), (2, 0))

    @given(coord, coord, coord, coord, signs)
    def test_antisymmetry(self, ax, ay, bx, by, s):
        c = (s, 0.0)
        if math.hypot(ax - s, ay) < 1e-6 or math.hypot(bx - s, by) < 1e-6:
            return
        a = clockwise_angle(c, (ax, ay), (bx, by))
        b = clockwise_angle(c, (bx, by), (ax, ay))
        assert 0 <= a < 2 * math.pi
        total = a + b
        assert min(abs(total), abs(total - 2 * math.pi)) < 1e-12

    @given(coord, coord, signs)
    def test_self_angle_zero(self, x, y, s):
        if math.hypot(x - s, y) < 1e-6:
            return
        assert clockwise_angle((s, 0.0), (x, y), (x, y)) == 0.0


class TestPlans:
    def test_invariants(self):
        plan = BangBangPlan.build(-1, 1.0, 3, 0.5, [(0, 0)] * 3)
        assert plan.total_time == pytest.approx(1.0 + 2 * math.pi + 0.5)
        arcs = plan.arcs((0, 0))
        assert [a.duration for a in arcs[1:-1]] == [math.pi, math.pi]
        assert [a.sign for a in arcs] == [-1, 1, -1, 1]
        assert plan.last_sign == ControlSign.PLUS

    def test_zero_switch_total(self):
        plan = BangBangPlan.build(1, 2.0, 0, 9.9)
        assert plan.total_time == 2.0 and plan.last_duration == 0.0

    def test_arc_validation(self):
        with pytest.raises(ValueError):
            Arc((-1.0, 0.0), (0.0, 0.0), -0.1)
        with pytest.raises(ValueError):
            Arc((0.0, 0.0), (0.0, 0.0), 1.0)

    def test_simulate_crisp_transfer(self):
        first = math.atan2(3, -4)
        plan = BangBangPlan.build(-1, first, 3, 0.0, [(4, 0), (-2, 0), (0, 0)])
        end, poly = simulate_plan((-5, 3), plan)
        np.testing.assert_allclose(end, (0, 0), atol=1e-9)
        # the same composition, integrated numerically arc by arc
        p = [-5.0, 3.0]
        for arc in plan.arcs((-5, 3)):
            p = integrate(p, arc.sign, arc.duration) if arc.duration else p
        np.testing.assert_allclose(p, (0, 0), atol=1e-8)
        assert poly[-1, 0] == plan.total_time
        np.testing.assert_allclose(poly[-1, 1:], end, atol=1e-12)
        assert np.all(np.diff(poly[:, 0]) > 0)
        assert np.max(np.diff(poly[:, 0])) <= 0.01 + 1e-12

    def test_zero_duration_plan(self):
        end, poly = simulate_plan((2.5, -1.0), BangBangPlan.build(-1, 0.0, 0))
        assert end == (2.5, -1.0)
        assert poly[-1, 0] == 0.0

    def test_half_turn_plan(self):
        end = plan_endpoint((0, 0), BangBangPlan.build(-1, math.pi, 0))
        np.testing.assert_allclose(end, (-2, 0), atol=1e-15)
