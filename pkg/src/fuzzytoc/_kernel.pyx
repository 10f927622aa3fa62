# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch minimum-time kernel.

Mirrors ``fuzzytoc.solver.solve_point_to_point`` candidate by candidate but
returns only the optimal time, for every (p, q) pair of two node sets.
"""

import numpy as np
cimport numpy as cnp
cimport openmp
from cython.parallel cimport prange
from libc.math cimport atan2, ceil, cos, fabs, floor, fmod, sin, sqrt, NAN, INFINITY, M_PI

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI
cdef double ANGLE_SNAP = 1e-12
cdef double DEGENERATE_RADIUS = 1e-15
cdef double RADICAND_CLAMP = 1e-12
cdef double POINT_SNAP = 1e-9
cdef double TIE_TOL = 1e-9
cdef double COS_PI = cos(M_PI)
cdef double SIN_PI = sin(M_PI)


cdef inline double hypot(double x, double y) noexcept nogil:
    # plain sqrt form; glibc hypot is several times slower and inputs are O(10)
    return sqrt(x * x + y * y)


cdef inline double arc_time(double c, double ax, double ay, double bx, double by) noexcept nogil:
    # clockwise angle about (c, 0) from a to b; -1 flags a degenerate center hit
    cdef double ang
    if hypot(ax - bx, ay - by) <= POINT_SNAP:
        return 0.0
    if hypot(ax - c, ay) <= DEGENERATE_RADIUS or hypot(bx - c, by) <= DEGENERATE_RADIUS:
        return -1.0
    ang = fmod(atan2(ay, ax - c) - atan2(by, bx - c), TWO_PI)
    if ang < 0:
        ang = ang + TWO_PI
    if TWO_PI - ang <= ANGLE_SNAP:
        return 0.0
    return ang


cdef inline void rotate(double *px, double *py, double c, double co, double si) noexcept nogil:
    cdef double zx = px[0] - c
    cdef double zy = py[0]
    px[0] = c + zx * co + zy * si
    py[0] = -zx * si + zy * co


cdef inline int k_min_of(double r1, double r2) noexcept nogil:
    return <int>ceil(fabs(r1 - r2) / 2.0)


cdef double solve_pair(double sx, double sy, double tx, double ty,
                       double vtol, double rtol) noexcept nogil:
    cdef double best = INFINITY
    cdef double s, last_c, r1, r2, x, y, rad, first, lastd, total, px, py, qx, qy, cc
    cdef int si, parity, k, branch, i, top, lo, hi, kmin, khat
    cdef int lo_b[2][2]
    cdef int hi_b[2][2]
    cdef double r1s[2]

    for si in range(2):
        s = -1.0 if si == 0 else 1.0
        if fabs(hypot(sx - s, sy) - hypot(tx - s, ty)) <= rtol:
            first = arc_time(s, sx, sy, tx, ty)
            if first >= 0:
                px = sx
                py = sy
                rotate(&px, &py, s, cos(first), sin(first))
                if hypot(px - tx, py - ty) <= vtol and first < best - TIE_TOL:
                    best = first

    top = 0
    for si in range(2):
        s = -1.0 if si == 0 else 1.0
        r1 = hypot(sx - s, sy)
        r1s[si] = r1
        for parity in range(2):
            last_c = s if parity == 0 else -s
            r2 = hypot(tx - last_c, ty)
            kmin = k_min_of(r1, r2)
            khat = <int>floor((r1 + r2) / 2.0)
            lo_b[si][parity] = kmin if kmin > 1 else 1
            hi_b[si][parity] = kmin + 3 if kmin + 3 < khat else khat
            if hi_b[si][parity] > top:
                top = hi_b[si][parity]

    for k in range(1, top + 1):
        parity = k % 2
        for si in range(2):
            lo = lo_b[si][parity]
            hi = hi_b[si][parity]
            if k < lo or k > hi:
                continue
            s = -1.0 if si == 0 else 1.0
            last_c = s if parity == 0 else -s
            r1 = r1s[si]
            r2 = hypot(tx - last_c, ty)
            x = -s * ((r1 * r1 - r2 * r2) / (4.0 * k) + k - 1)
            rad = r1 * r1 - (x - s) * (x - s)
            if rad < -RADICAND_CLAMP:
                continue
            if rad < 0:
                rad = 0.0
            for branch in range(2):
                y = sqrt(rad) if branch == 0 else -sqrt(rad)
                # walk the switch chain to X_k
                qx = x
                qy = y
                cc = s
                for i in range(k - 1):
                    cc = -cc
                    qx = 2.0 * cc - qx
                    qy = -qy
                first = arc_time(s, sx, sy, x, y)
                lastd = arc_time(last_c, qx, qy, tx, ty)
                if first < 0 or lastd < 0:
                    continue
                total = first + (k - 1) * M_PI + lastd
                if not total < best - TIE_TOL:
                    continue
                # verify by composing the arcs
                px = sx
                py = sy
                rotate(&px, &py, s, cos(first), sin(first))
                cc = s
                for i in range(k - 1):
                    cc = -cc
                    rotate(&px, &py, cc, COS_PI, SIN_PI)
                rotate(&px, &py, last_c, cos(lastd), sin(lastd))
                if hypot(px - tx, py - ty) <= vtol:
                    best = total
    if best == INFINITY:
        return NAN
    return best


def solve_time(double sx, double sy, double tx, double ty,
               double verify_tol=1e-6, double radius_tol=1e-9):
    """Optimal time for a single pair (NaN if no candidate verifies)."""
    return solve_pair(sx, sy, tx, ty, verify_tol, radius_tol)


def pair_times(P, Q, double verify_tol=1e-6, double radius_tol=1e-9, int num_threads=0):
    """``(len(P), len(Q))`` matrix of optimal transfer times; NaN marks failures."""
    cdef double[:, ::1] p = np.ascontiguousarray(P, dtype=np.float64).reshape(-1, 2)
    cdef double[:, ::1] q = np.ascontiguousarray(Q, dtype=np.float64).reshape(-1, 2)
    cdef Py_ssize_t n = p.shape[0], m = q.shape[0], i, j
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] o = out
    if num_threads <= 0:
        num_threads = openmp.omp_get_max_threads()
    for i in prange(n, nogil=True, schedule="static", num_threads=num_threads):
        for j in range(m):
            o[i, j] = solve_pair(p[i, 0], p[i, 1], q[j, 0], q[j, 1], verify_tol, radius_tol)
    return out
