"""Closed-form minimum-time transfer between two crisp phase points.

Optimal controls are bang-bang with interior switches exactly ``pi`` apart,
so a candidate is fixed by its start sign, its switch count ``k`` and the
first switch point ``X1``.  ``X1`` lies on the circle through ``S`` about the
first center and its ``k-1``-fold central-symmetric image ``X_k`` must lie on
the circle through ``T`` about the last center.  Intersecting the two circles
gives ``X1`` in closed form; every candidate is verified by simulation and
the fastest one wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .dynamics import (
    BangBangPlan,
    ControlSign,
    DegenerateGeometryError,
    Point,
    center_of,
    clockwise_angle,
    plan_endpoint,
)

VERIFY_TOL = 1e-6
RADIUS_TOL = 1e-9
RADICAND_CLAMP = 1e-12
POINT_SNAP = 1e-9
TIE_TOL = 1e-9


class UnreachablePairError(RuntimeError):
    """No candidate plan transfers S to T within the verification tolerance."""

    def __init__(self, S, T, message=None):
        self.S = tuple(S)
        self.T = tuple(T)
        super().__init__(message or f"no verified plan from {self.S} to {self.T}")


@dataclass(frozen=True)
class CandidateKey:
    start_sign: ControlSign
    k: int
    y_branch: int = 1  # +1 or -1, ignored for k == 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"switch count must be >= 0, got {self.k}")
        if self.y_branch not in (1, -1):
            raise ValueError(f"y_branch must be +1 or -1, got {self.y_branch}")

    def order(self) -> tuple[int, int, int]:
        # fewer switches, then u=-1 first, then the + branch first
        return (self.k, int(self.start_sign), -self.y_branch)


@dataclass(frozen=True)
class OptimalResult:
    plan: BangBangPlan
    time: float
    key: CandidateKey
    endpoint_error: float


def _dist(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def radii(S: Sequence[float], T: Sequence[float], start_sign, k_parity) -> tuple[float, float]:
    """Distances from S to the first-arc center and from T to the last-arc center.

    ``k_parity`` is ``"odd"``/``"even"`` or any integer switch count.
    """
    if isinstance(k_parity, str):
        if k_parity not in ("odd", "even"):
            raise ValueError(f"k_parity must be 'odd' or 'even', got {k_parity!r}")
        k_parity = 1 if k_parity == "odd" else 0
    sign = ControlSign(int(start_sign))
    r1 = _dist(S, sign.center)
    r2 = _dist(T, sign.after(int(k_parity)).center)
    return r1, r2


def k_bounds(r1: float, r2: float) -> tuple[int, int, int]:
    """``(k_min, k_hat, k_max)``: switch counts admitting a circle intersection.

    ``k_max`` also discards counts whose ``(k-1)*pi`` of interior arcs alone
    exceeds the time of the cheapest feasible count.
    """
    if r1 < 0 or r2 < 0:
        raise ValueError("radii must be nonnegative")
    k_min = math.ceil(abs(r1 - r2) / 2.0)
    k_hat = math.floor((r1 + r2) / 2.0)
    return k_min, k_hat, min(k_min + 3, k_hat)


def switch_chain(x: float, y: float, start_sign, k: int) -> list[Point]:
    """Switch points ``X1..Xk`` given ``X1 = (x, y)``.

    Consecutive switches are half a turn apart, so each point is the mirror
    image of the previous one through the center of the arc joining them.
    """
    if k < 1:
        raise ValueError(f"switch_chain needs k >= 1, got {k}")
    sign = ControlSign(int(start_sign))
    pts = [(float(x), float(y))]
    for _ in range(k - 1):
        sign = sign.flipped()
        cx = float(sign)
        px, py = pts[-1]
        pts.append((2.0 * cx - px, -py))
    return pts


def _arc_time(center: Point, a: Sequence[float], b: Sequence[float]) -> float | None:
    if _dist(a, b) <= POINT_SNAP:
        return 0.0
    try:
        return clockwise_angle(center, a, b)
    except DegenerateGeometryError:
        return None


def candidate_for_k(S: Sequence[float], T: Sequence[float], key: CandidateKey) -> BangBangPlan | None:
    """Plan with ``key.k >= 1`` switches, or ``None`` if the circles miss."""
    k = key.k
    if k < 1:
        raise ValueError("candidate_for_k needs k >= 1; use candidate_no_switch")
    s = key.start_sign
    r1, r2 = radii(S, T, s, k)
    x = -int(s) * ((r1 * r1 - r2 * r2) / (4.0 * k) + k - 1)
    rad = r1 * r1 - (x - float(s)) ** 2
    if rad < -RADICAND_CLAMP:
        return None
    y = key.y_branch * math.sqrt(max(rad, 0.0))
    chain = switch_chain(x, y, s, k)
    first = _arc_time(s.center, S, chain[0])
    last = _arc_time(s.after(k).center, chain[-1], T)
    if first is None or last is None:
        return None
    return BangBangPlan.build(s, first, k, last, chain)


def candidate_no_switch(S: Sequence[float], T: Sequence[float], start_sign) -> BangBangPlan | None:
    """Single-arc plan, possible only when S and T share a circle about the center."""
    s = ControlSign(int(start_sign))
    c = s.center
    if abs(_dist(S, c) - _dist(T, c)) > RADIUS_TOL:
        return None
    dur = _arc_time(c, S, T)
    if dur is None:
        return None
    return BangBangPlan.build(s, dur, 0)


def enumerate_candidates(S: Sequence[float], T: Sequence[float]):
    """Yield ``(key, plan)`` for every constructible candidate in tie-break order."""
    for s in (ControlSign.MINUS, ControlSign.PLUS):
        plan = candidate_no_switch(S, T, s)
        if plan is not None:
            yield CandidateKey(s, 0), plan
    bounds = {}
    for s in (ControlSign.MINUS, ControlSign.PLUS):
        for parity in (0, 1):
            k_min, _, k_max = k_bounds(*radii(S, T, s, parity))
            bounds[s, parity] = (max(k_min, 1), k_max)
    top = max(hi for _, hi in bounds.values())
    for k in range(1, top + 1):
        for s in (ControlSign.MINUS, ControlSign.PLUS):
            lo, hi = bounds[s, k % 2]
            if not lo <= k <= hi:
                continue
            for branch in (1, -1):
                key = CandidateKey(s, k, branch)
                plan = candidate_for_k(S, T, key)
                if plan is not None:
                    yield key, plan


def solve_point_to_point(S: Sequence[float], T: Sequence[float], verify_tol: float = VERIFY_TOL) -> OptimalResult:
    """Minimum-time plan from ``S`` to ``T``.

    Candidates arrive ordered by (switches, start sign, branch); a later one
    replaces the incumbent only if faster by more than ``TIE_TOL``.
    """
    S = (float(S[0]), float(S[1]))
    T = (float(T[0]), float(T[1]))
    best = None
    for key, plan in enumerate_candidates(S, T):
        err = _dist(plan_endpoint(S, plan), T)
        if err > verify_tol:
            continue
        if best is None or plan.total_time < best.time - TIE_TOL:
            best = OptimalResult(plan, plan.total_time, key, err)
    if best is None:
        raise UnreachablePairError(S, T)
    return best
