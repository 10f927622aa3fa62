"""Fuzzy optimal transfer time for time-optimal control of the mathematical pendulum."""

__version__ = "0.1.0"

from .dynamics import BangBangPlan, ControlSign, arc_end, clockwise_angle, simulate_plan
from .fuzzy_core import (
    FuzzyState,
    Interval,
    MembershipCurve,
    Rect,
    TriangularFuzzyNumber,
    alpha_cut,
    boundary_nodes,
    state_alpha_cut,
)
from .fuzzy_time import FuzzyProblem, LevelResult, fuzzy_optimal_time, t_lower, t_upper
from .kernels import BACKEND
from .oracle import OracleConfig, brute_force_min_time
from .solver import OptimalResult, UnreachablePairError, solve_point_to_point

__all__ = [
    "BACKEND",
    "BangBangPlan",
    "ControlSign",
    "FuzzyProblem",
    "FuzzyState",
    "Interval",
    "LevelResult",
    "MembershipCurve",
    "OptimalResult",
    "OracleConfig",
    "Rect",
    "TriangularFuzzyNumber",
    "UnreachablePairError",
    "alpha_cut",
    "arc_end",
    "boundary_nodes",
    "brute_force_min_time",
    "clockwise_angle",
    "fuzzy_optimal_time",
    "simulate_plan",
    "solve_point_to_point",
    "state_alpha_cut",
    "t_lower",
    "t_upper",
]
