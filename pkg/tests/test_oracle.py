import math

import pytest

from fuzzytoc.dynamics import plan_endpoint
from fuzzytoc.oracle import OracleConfig, OracleMissError, brute_force_min_time, search

FINE = OracleConfig()
SMALL = OracleConfig(tau_steps=128, sigma_steps=128, k_max_search=5)


def test_crisp_transfer():
    assert brute_force_min_time((-5, 3), (0, 0), FINE) == pytest.approx(8.781, abs=FINE.grid_bound)


def test_identity():
    assert brute_force_min_time((2.0, -1.0), (2.0, -1.0), SMALL) == pytest.approx(0.0, abs=1e-9)


def test_half_turn():
    assert brute_force_min_time((0, 0), (-2, 0), FINE) == pytest.approx(math.pi, abs=FINE.grid_bound)


@pytest.mark.parametrize("S, T", [((-5, 3), (0, 0)), ((3, -2), (-4, 1)), ((0.2, 0.1), (6, 6))])
def test_reported_plan_is_feasible(S, T):
    t, plan = search(S, T, SMALL)
    assert t == plan.total_time
    assert math.dist(plan_endpoint(S, plan), T) <= SMALL.accept_radius
    assert all(arc.duration == math.pi for arc in plan.arcs(S)[1:-1])


@pytest.mark.parametrize("S, T", [((-5, 3), (0, 0)), ((3, -2), (-4, 1))])
def test_nested_grids_do_not_get_worse(S, T):
    coarse = brute_force_min_time(S, T, OracleConfig(tau_steps=64, sigma_steps=64, k_max_search=5))
    fine = brute_force_min_time(S, T, OracleConfig(tau_steps=128, sigma_steps=128, k_max_search=5))
    assert fine <= coarse + 1e-9


def test_miss_when_too_few_switches():
    # needs at least two switches; searching only k <= 1 must fail loudly
    with pytest.raises(OracleMissError):
        brute_force_min_time((-5, 3), (0, 0), OracleConfig(tau_steps=64, sigma_steps=64, k_max_search=1))


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(tau_steps=0)
    with pytest.raises(ValueError):
        OracleConfig(accept_radius=0.0)
    assert FINE.grid_bound == pytest.approx(0.02 + 2 * math.pi / 512)
