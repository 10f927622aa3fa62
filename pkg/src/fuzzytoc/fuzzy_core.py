"""Triangular fuzzy numbers, fuzzy phase states and their alpha-cuts.

A triangular fuzzy number ``(left, peak, right)`` has a piecewise linear
membership that is 1 at ``peak`` and 0 outside ``(left, right)``.  Its
alpha-cut is the closed interval of values with membership >= alpha, and the
alpha-cut of a 2-D fuzzy state is the axis-aligned rectangle built from the
component cuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class FuzzyInputError(ValueError):
    """An argument lies outside the domain of a fuzzy-number operation."""


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0):
        raise FuzzyInputError(f"alpha must lie in [0, 1], got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise FuzzyInputError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    left: float
    peak: float
    right: float

    def __post_init__(self):
        vals = (self.left, self.peak, self.right)
        if not all(math.isfinite(v) for v in vals):
            raise FuzzyInputError(f"non-finite triangular number {vals}")
        if not self.left <= self.peak <= self.right:
            raise FuzzyInputError(f"need left <= peak <= right, got {vals}")

    @classmethod
    def crisp(cls, value: float) -> TriangularFuzzyNumber:
        return cls(value, value, value)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> TriangularFuzzyNumber:
        if len(values) != 3:
            raise FuzzyInputError(f"expected [left, peak, right], got {values!r}")
        return cls(*(float(v) for v in values))

    def membership(self, x: float) -> float:
        if x == self.peak:
            return 1.0
        if x <= self.left or x >= self.right:
            return 0.0
        if x < self.peak:
            return (x - self.left) / (self.peak - self.left)
        return (self.right - x) / (self.right - self.peak)

    def alpha_cut(self, alpha: float) -> Interval:
        return alpha_cut(self, alpha)


def alpha_cut(n: TriangularFuzzyNumber, alpha: float) -> Interval:
    """Closed interval of values with membership >= ``alpha``.

    The bounds are monotone in ``alpha`` under floating point rounding and
    collapse exactly onto the peak at ``alpha = 1``, so cuts are nested.
    """
    alpha = _check_alpha(alpha)
    if alpha == 1.0:
        return Interval(n.peak, n.peak)
    lo = min(n.peak, n.left + alpha * (n.peak - n.left))
    hi = max(n.peak, n.right - alpha * (n.right - n.peak))
    return Interval(lo, hi)


@dataclass(frozen=True)
class Rect:
    x1: Interval
    x2: Interval

    @property
    def is_point(self) -> bool:
        return self.x1.width == 0.0 and self.x2.width == 0.0

    def corners(self) -> list[tuple[float, float]]:
        """Distinct corners, clockwise from the lower-left one."""
        pts = [
            (self.x1.lo, self.x2.lo),
            (self.x1.lo, self.x2.hi),
            (self.x1.hi, self.x2.hi),
            (self.x1.hi, self.x2.lo),
        ]
        return list(dict.fromkeys(pts))

    def contains_point(self, p: Sequence[float], tol: float = 0.0) -> bool:
        return (self.x1.lo - tol <= p[0] <= self.x1.hi + tol
                and self.x2.lo - tol <= p[1] <= self.x2.hi + tol)


@dataclass(frozen=True)
class FuzzyState:
    x1: TriangularFuzzyNumber
    x2: TriangularFuzzyNumber

    @classmethod
    def crisp(cls, x1: float, x2: float) -> FuzzyState:
        return cls(TriangularFuzzyNumber.crisp(x1), TriangularFuzzyNumber.crisp(x2))

    @property
    def peak(self) -> tuple[float, float]:
        return (self.x1.peak, self.x2.peak)

    def membership(self, p: Sequence[float]) -> float:
        return min(self.x1.membership(p[0]), self.x2.membership(p[1]))


def state_alpha_cut(s: FuzzyState, alpha: float) -> Rect:
    return Rect(alpha_cut(s.x1, alpha), alpha_cut(s.x2, alpha))


def _edge(a: tuple[float, float], b: tuple[float, float], n: int) -> list[tuple[float, float]]:
    # n points from a (inclusive) towards b (exclusive)
    return [(a[0] + (b[0] - a[0]) * i / n, a[1] + (b[1] - a[1]) * i / n) for i in range(n)]


def boundary_nodes(r: Rect, nodes_per_edge: int) -> np.ndarray:
    """Equally spaced nodes on the perimeter of ``r`` as an ``(N, 2)`` array.

    Walks clockwise from the lower-left corner with ``nodes_per_edge`` nodes
    per edge, each edge contributing its starting corner.  A point rectangle
    gives one node; a rectangle with a single zero-length side is a segment
    and gives ``nodes_per_edge + 1`` nodes along it.
    """
    n = int(nodes_per_edge)
    if n < 1:
        raise FuzzyInputError(f"nodes_per_edge must be >= 1, got {nodes_per_edge!r}")
    ll = (r.x1.lo, r.x2.lo)
    ul = (r.x1.lo, r.x2.hi)
    ur = (r.x1.hi, r.x2.hi)
    lr = (r.x1.hi, r.x2.lo)
    if r.is_point:
        return np.array([ll], dtype=float)
    if r.x1.width == 0.0 or r.x2.width == 0.0:
        end = ul if r.x1.width == 0.0 else lr
        return np.array(_edge(ll, end, n) + [end], dtype=float)
    pts = _edge(ll, ul, n) + _edge(ul, ur, n) + _edge(ur, lr, n) + _edge(lr, ll, n)
    return np.array(pts, dtype=float)


def grid_nodes(r: Rect, per_axis: int) -> np.ndarray:
    """Tensor grid covering the whole rectangle, boundary included."""
    xs = np.unique(np.linspace(r.x1.lo, r.x1.hi, max(int(per_axis), 1)))
    ys = np.unique(np.linspace(r.x2.lo, r.x2.hi, max(int(per_axis), 1)))
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.column_stack([gx.ravel(), gy.ravel()])


@dataclass(frozen=True)
class MembershipCurve:
    """Fuzzy optimal time stored as its alpha-cuts ``[t_lo(alpha), t_hi(alpha)]``."""

    levels: tuple[tuple[float, float, float], ...]
    details: tuple = field(default=(), compare=False, repr=False)

    CORE_TOL = 1e-9

    def __post_init__(self):
        levels = tuple((float(a), float(lo), float(hi)) for a, lo, hi in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise FuzzyInputError("membership curve needs at least one level")
        alphas = [a for a, _, _ in levels]
        if alphas[0] != 0.0 or alphas[-1] != 1.0:
            raise FuzzyInputError("alpha levels must start at 0 and end at 1")
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise FuzzyInputError("alpha levels must be strictly increasing")
        for a, lo, hi in levels:
            if not lo <= hi:
                raise FuzzyInputError(f"t_lo > t_hi at alpha={a}: {lo} > {hi}")
        _, lo1, hi1 = levels[-1]
        if hi1 - lo1 > self.CORE_TOL:
            raise FuzzyInputError(f"core at alpha=1 is not a point: [{lo1}, {hi1}]")

    @property
    def alphas(self) -> np.ndarray:
        return np.array([lv[0] for lv in self.levels])

    @property
    def lower(self) -> np.ndarray:
        return np.array([lv[1] for lv in self.levels])

    @property
    def upper(self) -> np.ndarray:
        return np.array([lv[2] for lv in self.levels])

    @property
    def support(self) -> tuple[float, float]:
        return self.levels[0][1], self.levels[0][2]

    @property
    def core(self) -> float:
        return self.levels[-1][1]

    def nesting_violations(self, slack: float = 0.0) -> list[tuple[float, float, str]]:
        """Consecutive level pairs where the cuts fail to shrink as alpha grows."""
        out = []
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(self.levels, self.levels[1:]):
            if lo1 < lo0 - slack:
                out.append((a0, a1, "t_lower"))
            if hi1 > hi0 + slack:
                out.append((a0, a1, "t_upper"))
        return out

    def membership(self, t: float) -> float:
        """Largest tabulated alpha whose cut contains ``t`` (0 if none)."""
        best = 0.0
        for a, lo, hi in self.levels:
            if lo <= t <= hi:
                best = a
        return best


def alpha_grid(step: float) -> list[float]:
    """Levels 0, step, 2*step, ..., 1 with the last level pinned to exactly 1."""
    if not 0.0 < step <= 1.0:
        raise FuzzyInputError(f"alpha step must lie in (0, 1], got {step!r}")
    n = int(round(1.0 / step))
    if not math.isclose(n * step, 1.0, rel_tol=0, abs_tol=1e-9):
        raise FuzzyInputError(f"alpha step {step!r} does not divide [0, 1] evenly")
    return [round(i / n, 12) for i in range(n + 1)]


def validate_alpha_levels(levels: Iterable[float]) -> list[float]:
    levels = [float(a) for a in levels]
    if not levels:
        raise FuzzyInputError("alpha_levels must be nonempty")
    if any(not 0.0 <= a <= 1.0 for a in levels):
        raise FuzzyInputError("alpha_levels must lie in [0, 1]")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise FuzzyInputError("alpha_levels must be strictly increasing")
    if levels[0] != 0.0 or levels[-1] != 1.0:
        raise FuzzyInputError("alpha_levels must contain 0 and 1")
    return levels
