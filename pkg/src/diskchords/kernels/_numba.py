"""Numba-compiled twins of the reference kernels.

The loop bodies replicate the expressions of ``_reference`` one to one so
that both backends produce identical elementwise results.  ``fastmath`` stays
off: reassociation or FMA contraction would break that equivalence.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi
PARALLEL_EPS = 1e-14
DEGENERACY_EPS = 1e-12


@njit(cache=True, nogil=True)
def _frame_of(ax, ay, bx, by):
    ux = bx - ax
    uy = by - ay
    length = math.sqrt(ux * ux + uy * uy)
    dx = ux / length
    dy = uy / length
    nx = -dy
    ny = dx
    s0 = ax * nx + ay * ny
    sign = 1.0 if s0 >= 0.0 else -1.0
    rho = s0 * sign
    gamma = math.atan2(sign * ny, sign * nx) % TWO_PI
    etx = -sign * dx
    ety = -sign * dy
    t_a = ax * etx + ay * ety
    t_b = bx * etx + by * ety
    return rho, gamma, t_a, t_b


@njit(cache=True, nogil=True)
def segment_frames(ax, ay, bx, by):
    n = ax.shape[0]
    rho = np.empty(n, dtype=np.float64)
    gamma = np.empty(n, dtype=np.float64)
    t_a = np.empty(n, dtype=np.float64)
    t_b = np.empty(n, dtype=np.float64)
    for i in range(n):
        rho[i], gamma[i], t_a[i], t_b[i] = _frame_of(ax[i], ay[i], bx[i], by[i])
    return rho, gamma, t_a, t_b


@njit(cache=True, nogil=True)
def pair_stats(ax, ay, bx, by, cx, cy, dx, dy):
    n = ax.shape[0]
    crossed = np.empty(n, dtype=np.uint8)
    theta = np.empty(n, dtype=np.float64)
    for i in range(n):
        o1 = (dx[i] - cx[i]) * (ay[i] - cy[i]) - (dy[i] - cy[i]) * (ax[i] - cx[i])
        o2 = (dx[i] - cx[i]) * (by[i] - cy[i]) - (dy[i] - cy[i]) * (bx[i] - cx[i])
        o3 = (bx[i] - ax[i]) * (cy[i] - ay[i]) - (by[i] - ay[i]) * (cx[i] - ax[i])
        o4 = (bx[i] - ax[i]) * (dy[i] - ay[i]) - (by[i] - ay[i]) * (dx[i] - ax[i])
        crossed[i] = 1 if (o1 * o2 < 0.0 and o3 * o4 < 0.0) else 0
        _, g1, _, _ = _frame_of(ax[i], ay[i], bx[i], by[i])
        _, g2, _, _ = _frame_of(cx[i], cy[i], dx[i], dy[i])
        theta[i] = abs(abs(g1 - g2) - np.pi)
    return crossed, theta


@njit(cache=True, nogil=True)
def predicate_stats(ax, ay, bx, by, cx, cy, dx, dy):
    n = ax.shape[0]
    orient = np.empty(n, dtype=np.uint8)
    chord = np.empty(n, dtype=np.uint8)
    degenerate = np.empty(n, dtype=np.uint8)
    union_read = np.empty(n, dtype=np.uint8)
    for i in range(n):
        o1 = (dx[i] - cx[i]) * (ay[i] - cy[i]) - (dy[i] - cy[i]) * (ax[i] - cx[i])
        o2 = (dx[i] - cx[i]) * (by[i] - cy[i]) - (dy[i] - cy[i]) * (bx[i] - cx[i])
        o3 = (bx[i] - ax[i]) * (cy[i] - ay[i]) - (by[i] - ay[i]) * (cx[i] - ax[i])
        o4 = (bx[i] - ax[i]) * (dy[i] - ay[i]) - (by[i] - ay[i]) * (dx[i] - ax[i])
        orient[i] = 1 if (o1 * o2 < 0.0 and o3 * o4 < 0.0) else 0

        r1, g1, ta1, tb1 = _frame_of(ax[i], ay[i], bx[i], by[i])
        r2, g2, ta2, tb2 = _frame_of(cx[i], cy[i], dx[i], dy[i])
        dg = g1 - g2
        sd = math.sin(dg)
        parallel = abs(sd) <= PARALLEL_EPS
        safe_sd = 1.0 if parallel else sd
        zsq = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * math.cos(dg)) / (safe_sd * safe_sd)
        zx = (r2 * math.sin(g1) - r1 * math.sin(g2)) / safe_sd
        zy = (r1 * math.cos(g2) - r2 * math.cos(g1)) / safe_sd

        tz1 = zx * (-math.sin(g1)) + zy * math.cos(g1)
        tz2 = zx * (-math.sin(g2)) + zy * math.cos(g2)
        p1 = (ta1 - tz1) / (ta1 - tb1)
        p2 = (ta2 - tz2) / (ta2 - tb2)
        inside = (zsq <= 1.0 and 0.0 <= p1 <= 1.0 and 0.0 <= p2 <= 1.0)
        chord[i] = 1 if (inside and not parallel) else 0

        rad1 = math.sqrt(max(zsq - r1 * r1, 0.0))
        rad2 = math.sqrt(max(zsq - r2 * r2, 0.0))
        dt1 = ta1 - tb1
        dt2 = ta2 - tb2
        q1a = (ta1 * dt1 - abs(dt1) * rad1) / (dt1 * dt1)
        q1b = (ta1 * dt1 + abs(dt1) * rad1) / (dt1 * dt1)
        q2a = (ta2 * dt2 - abs(dt2) * rad2) / (dt2 * dt2)
        q2b = (ta2 * dt2 + abs(dt2) * rad2) / (dt2 * dt2)
        member1 = (0.0 <= q1a <= 1.0) or (0.0 <= q1b <= 1.0)
        member2 = (0.0 <= q2a <= 1.0) or (0.0 <= q2b <= 1.0)
        union_read[i] = 1 if (zsq <= 1.0 and member1 and member2
                              and not parallel) else 0

        degen = parallel or abs(zsq - 1.0) <= DEGENERACY_EPS
        for root in (p1, p2, q1a, q1b, q2a, q2b):
            if abs(root) <= DEGENERACY_EPS or abs(root - 1.0) <= DEGENERACY_EPS:
                degen = True
        if o1 == 0.0 or o2 == 0.0 or o3 == 0.0 or o4 == 0.0:
            degen = True
        degenerate[i] = 1 if degen else 0
    return orient, chord, degenerate, union_read


@njit(cache=True, nogil=True)
def grid_angle_kernel_sum(theta: float, n: int, block: int = 512) -> float:
    # block is accepted for interface parity with the reference backend;
    # the loop needs no blocking.
    s = math.sin(theta)
    s2 = s * s
    ct = math.cos(theta)
    scale = (8.0 / np.pi) ** 2
    total = 0.0
    for i in range(n):
        r1 = (i + 0.5) / n
        sq1 = math.sqrt(1.0 - r1 * r1)
        row = 0.0
        for j in range(n):
            r2 = (j + 0.5) / n
            if sq1 * abs(s) >= abs(r1 * ct + r2):
                sq2 = math.sqrt(1.0 - r2 * r2)
                bracket = 1.0 - (r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * ct) / s2
                row += scale * sq1 * sq2 * bracket * bracket
        total += row
    return total
