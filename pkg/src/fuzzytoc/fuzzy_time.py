"""Fuzzy optimal transfer time from fuzzy start and target states.

Each crisp pair ``p`` in the start cut and ``q`` in the target cut at level
alpha has an optimal time; the alpha-cut of the fuzzy time is the interval
between the best and worst of those times.  Both extremes are approximated
by sampling nodes on the boundaries of the two cut rectangles.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .fuzzy_core import (
    FuzzyInputError,
    FuzzyState,
    MembershipCurve,
    Rect,
    boundary_nodes,
    grid_nodes,
    state_alpha_cut,
    validate_alpha_levels,
)
from .solver import RADIUS_TOL, VERIFY_TOL, UnreachablePairError

log = logging.getLogger(__name__)

ROW_BLOCK_PAIRS = 1 << 18

Pair = tuple[tuple[float, float], tuple[float, float]]


class NestingWarning(UserWarning):
    """Computed alpha-cuts of the fuzzy time fail to shrink with alpha."""


class LevelSolveError(UnreachablePairError):
    def __init__(self, S, T, alpha):
        self.alpha = alpha
        super().__init__(S, T, f"no verified plan from p={tuple(S)} to q={tuple(T)} at alpha={alpha}")


@dataclass(frozen=True)
class FuzzyProblem:
    start: FuzzyState
    target: FuzzyState
    alpha_levels: tuple[float, ...] = tuple(round(i / 20, 12) for i in range(21))
    nodes_per_edge: int = 64
    interior_grid: bool = False
    interior_per_axis: int = 17

    def __post_init__(self):
        object.__setattr__(self, "alpha_levels", tuple(validate_alpha_levels(self.alpha_levels)))
        if int(self.nodes_per_edge) < 1:
            raise FuzzyInputError("nodes_per_edge must be >= 1")
        if int(self.interior_per_axis) < 1:
            raise FuzzyInputError("interior_per_axis must be >= 1")


@dataclass(frozen=True)
class LevelResult:
    alpha: float
    t_lo: float
    t_hi: float
    argmin_pair: Pair
    argmax_pair: Pair
    n_pairs: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.t_lo <= self.t_hi:
            raise ValueError(f"t_lo > t_hi at alpha={self.alpha}")


def node_set(rect: Rect, problem: FuzzyProblem) -> np.ndarray:
    nodes = boundary_nodes(rect, problem.nodes_per_edge)
    if problem.interior_grid and not rect.is_point:
        inner = grid_nodes(rect, problem.interior_per_axis)
        seen = {tuple(p) for p in nodes.tolist()}
        extra = [p for p in inner.tolist() if tuple(p) not in seen]
        if extra:
            nodes = np.vstack([nodes, np.array(extra)])
    return nodes


def _as_point(a) -> tuple[float, float]:
    return (float(a[0]), float(a[1]))


def evaluate_level(problem: FuzzyProblem, alpha: float, *, verify_tol: float = VERIFY_TOL,
                   radius_tol: float = RADIUS_TOL, threads: int = 0,
                   backend: str | None = None) -> LevelResult:
    """Best- and worst-case optimal times over the node pairs of one alpha-cut.

    Ties resolve to the first pair in row-major (start node, target node)
    order, so the reported pairs do not depend on chunking or threads.
    """
    P = node_set(state_alpha_cut(problem.start, alpha), problem)
    Q = node_set(state_alpha_cut(problem.target, alpha), problem)
    block = max(1, ROW_BLOCK_PAIRS // len(Q))
    lo = (np.inf, None)
    hi = (-np.inf, None)
    for r0 in range(0, len(P), block):
        times = kernels.pair_times(P[r0:r0 + block], Q, verify_tol, radius_tol, threads, backend)
        bad = np.isnan(times)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise LevelSolveError(_as_point(P[r0 + i]), _as_point(Q[j]), alpha)
        i = int(np.argmin(times))
        if times.flat[i] < lo[0]:
            lo = (float(times.flat[i]), divmod(i, len(Q)), r0)
        i = int(np.argmax(times))
        if times.flat[i] > hi[0]:
            hi = (float(times.flat[i]), divmod(i, len(Q)), r0)

    def pair(entry) -> Pair:
        _, (i, j), r0 = entry
        return (_as_point(P[r0 + i]), _as_point(Q[j]))

    return LevelResult(float(alpha), lo[0], hi[0], pair(lo), pair(hi), len(P) * len(Q))


def t_lower(problem: FuzzyProblem, alpha: float, **kw) -> tuple[float, Pair]:
    res = evaluate_level(problem, alpha, **kw)
    return res.t_lo, res.argmin_pair


def t_upper(problem: FuzzyProblem, alpha: float, **kw) -> tuple[float, Pair]:
    res = evaluate_level(problem, alpha, **kw)
    return res.t_hi, res.argmax_pair


def curve_from_levels(results: Sequence[LevelResult], warn: bool = True) -> MembershipCurve:
    curve = MembershipCurve(tuple((r.alpha, r.t_lo, r.t_hi) for r in results), tuple(results))
    if warn:
        for a0, a1, side in curve.nesting_violations():
            msg = f"{side} not nested between alpha={a0} and alpha={a1}"
            log.warning(msg)
            warnings.warn(msg, NestingWarning, stacklevel=3)
    return curve


def fuzzy_optimal_time(problem: FuzzyProblem, *, verify_tol: float = VERIFY_TOL,
                       radius_tol: float = RADIUS_TOL, threads: int = 0,
                       backend: str | None = None) -> MembershipCurve:
    """Membership curve of the fuzzy optimal time, one level per ``alpha_levels`` entry.

    The returned curve carries the per-level :class:`LevelResult` records in
    ``curve.details``.
    """
    results = []
    for alpha in problem.alpha_levels:
        res = evaluate_level(problem, alpha, verify_tol=verify_tol, radius_tol=radius_tol,
                             threads=threads, backend=backend)
        log.debug("alpha=%.3f t=[%.6f, %.6f] over %d pairs", alpha, res.t_lo, res.t_hi, res.n_pairs)
        results.append(res)
    return curve_from_levels(results)
