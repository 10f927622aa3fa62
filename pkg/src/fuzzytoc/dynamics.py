"""Phase-plane geometry of the controlled pendulum.

With ``x1' = x2, x2' = -x1 + u`` and a constant control ``u = +/-1`` every
trajectory is a clockwise circle about ``(u, 0)`` traversed at unit angular
speed, so arc time equals swept angle.  Arcs are evaluated in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
ANGLE_SNAP = 1e-12
DEGENERATE_RADIUS = 1e-15

Point = tuple[float, float]


class DegenerateGeometryError(ValueError):
    """An angle was requested about a point coinciding with the arc center."""


class ControlSign(IntEnum):
    MINUS = -1
    PLUS = 1

    @property
    def center(self) -> Point:
        return (float(self.value), 0.0)

    def flipped(self) -> ControlSign:
        return ControlSign(-self.value)

    def after(self, switches: int) -> ControlSign:
        """Sign in force after ``switches`` control switches."""
        return self if switches % 2 == 0 else self.flipped()


K = ControlSign.MINUS.center
L = ControlSign.PLUS.center


def center_of(sign) -> Point:
    return (float(sign), 0.0)


def arc_end(p, sign, duration):
    """Rotate ``p`` clockwise about the center of ``sign`` by ``duration`` radians.

    Broadcasts over arrays: ``p`` has shape ``(..., 2)``; ``sign`` and
    ``duration`` broadcast against ``p[..., 0]``.
    """
    p = np.asarray(p, dtype=float)
    cx = np.asarray(sign, dtype=float)
    d = np.asarray(duration, dtype=float)
    zx = p[..., 0] - cx
    zy = p[..., 1]
    c, s = np.cos(d), np.sin(d)
    return np.stack([cx + zx * c + zy * s, -zx * s + zy * c], axis=-1)


def clockwise_angle(center: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    """Angle in ``[0, 2*pi)`` swept clockwise from ray center->a to ray center->b."""
    ax, ay = a[0] - center[0], a[1] - center[1]
    bx, by = b[0] - center[0], b[1] - center[1]
    if math.hypot(ax, ay) <= DEGENERATE_RADIUS or math.hypot(bx, by) <= DEGENERATE_RADIUS:
        raise DegenerateGeometryError(f"point coincides with center {tuple(center)}")
    ang = (math.atan2(ay, ax) - math.atan2(by, bx)) % TWO_PI
    if TWO_PI - ang <= ANGLE_SNAP:
        return 0.0
    return ang


@dataclass(frozen=True)
class Arc:
    center: Point
    start: Point
    duration: float

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"negative arc duration {self.duration}")
        if self.center not in (K, L):
            raise ValueError(f"arc center must be K or L, got {self.center}")

    @property
    def sign(self) -> ControlSign:
        return ControlSign(int(self.center[0]))

    @property
    def end(self) -> Point:
        x, y = arc_end(self.start, self.center[0], self.duration)
        return (float(x), float(y))

    def sample(self, resolution: float = 0.01) -> np.ndarray:
        """Points along the arc, both ends included, at most ``resolution`` rad apart."""
        n = math.ceil(self.duration / resolution)
        ts = np.linspace(0.0, self.duration, n + 1)
        return arc_end(np.broadcast_to(self.start, (n + 1, 2)), self.center[0], ts)


@dataclass(frozen=True)
class BangBangPlan:
    """Bang-bang control: first arc, ``k - 1`` half-turns, last arc."""

    start_sign: ControlSign
    first_duration: float
    num_switches: int
    last_duration: float
    switch_points: tuple[Point, ...]
    total_time: float

    @classmethod
    def build(cls, start_sign, first_duration, num_switches, last_duration=0.0,
              switch_points=()) -> BangBangPlan:
        k = int(num_switches)
        first = float(first_duration)
        last = float(last_duration) if k else 0.0
        total = first + max(k - 1, 0) * math.pi + last if k else first
        pts = tuple((float(x), float(y)) for x, y in switch_points)
        return cls(ControlSign(int(start_sign)), first, k, last, pts, total)

    @property
    def last_sign(self) -> ControlSign:
        return self.start_sign.after(self.num_switches)

    def arcs(self, start: Sequence[float]) -> list[Arc]:
        sign = self.start_sign
        durations = [self.first_duration]
        if self.num_switches:
            durations += [math.pi] * (self.num_switches - 1) + [self.last_duration]
        out = []
        p = (float(start[0]), float(start[1]))
        for d in durations:
            arc = Arc(sign.center, p, d)
            out.append(arc)
            p = arc.end
            sign = sign.flipped()
        return out


def plan_endpoint(start: Sequence[float], plan: BangBangPlan) -> Point:
    """Exact endpoint reached from ``start`` under ``plan``."""
    arcs = plan.arcs(start)
    return arcs[-1].end


def simulate_plan(start: Sequence[float], plan: BangBangPlan, resolution: float = 0.01):
    """Return ``(endpoint, polyline)`` for ``plan`` applied from ``start``.

    ``polyline`` is an ``(N, 3)`` array of ``(t, x1, x2)`` rows; its last time
    equals ``plan.total_time``.
    """
    arcs = plan.arcs(start)
    rows = []
    t0 = 0.0
    for i, arc in enumerate(arcs):
        if i and arc.duration == 0.0:
            continue
        pts = arc.sample(resolution)
        ts = t0 + np.linspace(0.0, arc.duration, len(pts))
        chunk = np.column_stack([ts, pts])
        rows.append(chunk if i == 0 else chunk[1:])
        t0 += arc.duration
    polyline = np.vstack(rows)
    polyline[-1, 0] = plan.total_time
    return arcs[-1].end, polyline
