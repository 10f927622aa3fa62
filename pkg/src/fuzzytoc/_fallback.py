"""Pure-Python (numpy) batch minimum-time kernel.

Same candidate order, tolerances and verification as the compiled kernel,
vectorized over point pairs instead of looped.
"""

from __future__ import annotations

import math

import numpy as np

from .dynamics import ANGLE_SNAP, DEGENERATE_RADIUS, TWO_PI, arc_end
from .solver import POINT_SNAP, RADICAND_CLAMP, TIE_TOL

CHUNK = 1 << 16


def _arc_time(c: float, ax, ay, bx, by):
    """Vectorized clockwise angle about ``(c, 0)``; NaN where a point hits the center."""
    with np.errstate(invalid="ignore"):
        ang = np.fmod(np.arctan2(ay, ax - c) - np.arctan2(by, bx - c), TWO_PI)
    ang = np.where(ang < 0, ang + TWO_PI, ang)
    ang = np.where(TWO_PI - ang <= ANGLE_SNAP, 0.0, ang)
    degenerate = (np.hypot(ax - c, ay) <= DEGENERATE_RADIUS) | (np.hypot(bx - c, by) <= DEGENERATE_RADIUS)
    ang = np.where(degenerate, np.nan, ang)
    return np.where(np.hypot(ax - bx, ay - by) <= POINT_SNAP, 0.0, ang)


def _verify(sx, sy, tx, ty, s, k, first, lastd, vtol):
    p = arc_end(np.column_stack([sx, sy]), s, first)
    cur = s
    for _ in range(k - 1):
        cur = -cur
        p = arc_end(p, cur, math.pi)
    if k:
        p = arc_end(p, -cur, lastd)
    return np.hypot(p[:, 0] - tx, p[:, 1] - ty) <= vtol


def _solve_block(sx, sy, tx, ty, vtol, rtol):
    n = len(sx)
    best = np.full(n, np.inf)

    for s in (-1.0, 1.0):
        idx = np.flatnonzero(np.abs(np.hypot(sx - s, sy) - np.hypot(tx - s, ty)) <= rtol)
        if not len(idx):
            continue
        first = _arc_time(s, sx[idx], sy[idx], tx[idx], ty[idx])
        ok = ~np.isnan(first)
        idx, first = idx[ok], first[ok]
        ok = _verify(sx[idx], sy[idx], tx[idx], ty[idx], s, 0, first, None, vtol)
        ok &= first < best[idx] - TIE_TOL
        best[idx[ok]] = first[ok]

    lo, hi = {}, {}
    for s in (-1.0, 1.0):
        r1 = np.hypot(sx - s, sy)
        for parity in (0, 1):
            last_c = s if parity == 0 else -s
            r2 = np.hypot(tx - last_c, ty)
            kmin = np.ceil(np.abs(r1 - r2) / 2.0).astype(np.int64)
            khat = np.floor((r1 + r2) / 2.0).astype(np.int64)
            lo[s, parity] = np.maximum(kmin, 1)
            hi[s, parity] = np.minimum(kmin + 3, khat)
    top = int(max(h.max(initial=0) for h in hi.values()))

    for k in range(1, top + 1):
        parity = k % 2
        for s in (-1.0, 1.0):
            idx = np.flatnonzero((lo[s, parity] <= k) & (k <= hi[s, parity]))
            if not len(idx):
                continue
            last_c = s if parity == 0 else -s
            px, py, qx, qy = sx[idx], sy[idx], tx[idx], ty[idx]
            r1 = np.hypot(px - s, py)
            r2 = np.hypot(qx - last_c, qy)
            x = -s * ((r1 * r1 - r2 * r2) / (4.0 * k) + k - 1)
            rad = r1 * r1 - (x - s) * (x - s)
            keep = rad >= -RADICAND_CLAMP
            idx, px, py, qx, qy, x = idx[keep], px[keep], py[keep], qx[keep], qy[keep], x[keep]
            root = np.sqrt(np.maximum(rad[keep], 0.0))
            for y in (root, -root):
                xk, yk = x.copy(), y.copy()
                cc = s
                for _ in range(k - 1):
                    cc = -cc
                    xk = 2.0 * cc - xk
                    yk = -yk
                first = _arc_time(s, px, py, x, y)
                lastd = _arc_time(last_c, xk, yk, qx, qy)
                total = first + (k - 1) * math.pi + lastd
                with np.errstate(invalid="ignore"):
                    cand = total < best[idx] - TIE_TOL
                sel = np.flatnonzero(cand)
                if not len(sel):
                    continue
                ok = _verify(px[sel], py[sel], qx[sel], qy[sel], s, k, first[sel], lastd[sel], vtol)
                sel = sel[ok]
                best[idx[sel]] = total[sel]

    best[np.isinf(best)] = np.nan
    return best


def solve_time(sx, sy, tx, ty, verify_tol=1e-6, radius_tol=1e-9):
    return float(_solve_block(np.array([sx], float), np.array([sy], float),
                              np.array([tx], float), np.array([ty], float),
                              verify_tol, radius_tol)[0])


def pair_times(P, Q, verify_tol=1e-6, radius_tol=1e-9, num_threads=0):
    """``(len(P), len(Q))`` matrix of optimal transfer times; NaN marks failures.

    ``num_threads`` is accepted for signature parity and ignored.
    """
    P = np.asarray(P, dtype=float).reshape(-1, 2)
    Q = np.asarray(Q, dtype=float).reshape(-1, 2)
    n, m = len(P), len(Q)
    sx = np.repeat(P[:, 0], m)
    sy = np.repeat(P[:, 1], m)
    tx = np.tile(Q[:, 0], n)
    ty = np.tile(Q[:, 1], n)
    out = np.empty(n * m)
    for a in range(0, n * m, CHUNK):
        b = a + CHUNK
        out[a:b] = _solve_block(sx[a:b], sy[a:b], tx[a:b], ty[a:b], verify_tol, radius_tol)
    return out.reshape(n, m)
