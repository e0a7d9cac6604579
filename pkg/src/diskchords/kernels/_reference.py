"""Pure NumPy implementations of the hot array kernels.

Each function here mirrors, expression for expression, the loop bodies in
``_numba``; the two backends are expected to produce identical elementwise
outputs.  Reductions (the grid sum) may differ between backends by a few ulp
because NumPy sums pairwise while the compiled loop sums sequentially.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi
PARALLEL_EPS = 1e-14
DEGENERACY_EPS = 1e-12


def segment_frames(ax, ay, bx, by):
    """Chord frames of segments given endpoint coordinate arrays.

    Returns ``(rho, gamma, t_a, t_b)`` float64 arrays.  Same construction as
    ``geometry.chord_frame_from_endpoints``; no validity checks are performed.
    """
    ux = bx - ax
    uy = by - ay
    length = np.sqrt(ux * ux + uy * uy)
    dx = ux / length
    dy = uy / length
    nx = -dy
    ny = dx
    s0 = ax * nx + ay * ny
    sign = np.where(s0 >= 0.0, 1.0, -1.0)
    rho = s0 * sign
    gamma = np.arctan2(sign * ny, sign * nx) % TWO_PI
    etx = -sign * dx
    ety = -sign * dy
    t_a = ax * etx + ay * ety
    t_b = bx * etx + by * ety
    return rho, gamma, t_a, t_b


def pair_stats(ax, ay, bx, by, cx, cy, dx, dy):
    """Proper-crossing flag and chord angle for segment pairs.

    Returns ``(crossed, theta)`` where ``crossed`` is uint8 (1 when the open
    segments cross, by strict orientation tests) and ``theta`` is the angle
    ``||gamma_1 - gamma_2| - pi|`` between the two chords.
    """
    o1 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o2 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    o3 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o4 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    crossed = ((o1 * o2 < 0.0) & (o3 * o4 < 0.0)).astype(np.uint8)
    _, g1, _, _ = segment_frames(ax, ay, bx, by)
    _, g2, _, _ = segment_frames(cx, cy, dx, dy)
    theta = np.abs(np.abs(g1 - g2) - np.pi)
    return crossed, theta


def predicate_stats(ax, ay, bx, by, cx, cy, dx, dy):
    """Compare the orientation crossing test with the chord-frame one.

    The chord-frame characterization: the lines' crossing point z satisfies
    ``|z|^2 <= 1`` and, on each segment, the interpolation parameter of z
    itself (not of its mirror image across the foot) lies in ``[0, 1]``.

    Returns ``(orient, chord, degenerate, union_read)`` uint8 arrays.
    ``union_read`` applies the looser membership "some root of the squared
    norm equation lies in [0, 1] on each segment", which also admits mirror
    points and is kept purely as a diagnostic.  ``degenerate`` marks pairs
    within 1e-12 of a predicate boundary (parallel lines, |z| near 1, any
    root near 0 or 1, or an exactly collinear endpoint).
    """
    o1 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o2 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    o3 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o4 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    orient = ((o1 * o2 < 0.0) & (o3 * o4 < 0.0)).astype(np.uint8)

    r1, g1, ta1, tb1 = segment_frames(ax, ay, bx, by)
    r2, g2, ta2, tb2 = segment_frames(cx, cy, dx, dy)
    dg = g1 - g2
    sd = np.sin(dg)
    parallel = np.abs(sd) <= PARALLEL_EPS
    safe_sd = np.where(parallel, 1.0, sd)
    zsq = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * np.cos(dg)) / (safe_sd * safe_sd)
    zx = (r2 * np.sin(g1) - r1 * np.sin(g2)) / safe_sd
    zy = (r1 * np.cos(g2) - r2 * np.cos(g1)) / safe_sd

    tz1 = zx * (-np.sin(g1)) + zy * np.cos(g1)
    tz2 = zx * (-np.sin(g2)) + zy * np.cos(g2)
    p1 = (ta1 - tz1) / (ta1 - tb1)
    p2 = (ta2 - tz2) / (ta2 - tb2)
    inside = (zsq <= 1.0) & (p1 >= 0.0) & (p1 <= 1.0) & (p2 >= 0.0) & (p2 <= 1.0)
    chord = (inside & ~parallel).astype(np.uint8)

    rad1 = np.sqrt(np.maximum(zsq - r1 * r1, 0.0))
    rad2 = np.sqrt(np.maximum(zsq - r2 * r2, 0.0))
    dt1 = ta1 - tb1
    dt2 = ta2 - tb2
    q1a = (ta1 * dt1 - np.abs(dt1) * rad1) / (dt1 * dt1)
    q1b = (ta1 * dt1 + np.abs(dt1) * rad1) / (dt1 * dt1)
    q2a = (ta2 * dt2 - np.abs(dt2) * rad2) / (dt2 * dt2)
    q2b = (ta2 * dt2 + np.abs(dt2) * rad2) / (dt2 * dt2)
    member1 = ((q1a >= 0.0) & (q1a <= 1.0)) | ((q1b >= 0.0) & (q1b <= 1.0))
    member2 = ((q2a >= 0.0) & (q2a <= 1.0)) | ((q2b >= 0.0) & (q2b <= 1.0))
    union_read = ((zsq <= 1.0) & member1 & member2 & ~parallel).astype(np.uint8)

    degenerate = parallel | (np.abs(zsq - 1.0) <= DEGENERACY_EPS)
    for root in (p1, p2, q1a, q1b, q2a, q2b):
        degenerate |= (np.abs(root) <= DEGENERACY_EPS) \
            | (np.abs(root - 1.0) <= DEGENERACY_EPS)
    for o in (o1, o2, o3, o4):
        degenerate |= (o == 0.0)
    return orient, chord, degenerate.astype(np.uint8), union_read


def grid_angle_kernel_sum(theta: float, n: int, block: int = 512) -> float:
    """Midpoint-rule sum of the crossing-angle kernel over the admissible
    region of the unit square, on an ``n x n`` lattice of cell centers.

    The caller converts the sum to an integral by multiplying with
    ``1 / (pi n^2)``.  Evaluated in row blocks to bound memory.
    """
    s = np.sin(theta)
    s2 = s * s
    ct = np.cos(theta)
    centers = (np.arange(n, dtype=np.float64) + 0.5) / n
    scale = (8.0 / np.pi) ** 2
    total = 0.0
    for start in range(0, n, block):
        r1 = centers[start:start + block][:, None]
        r2 = centers[None, :]
        sq1 = np.sqrt(1.0 - r1 * r1)
        sq2 = np.sqrt(1.0 - r2 * r2)
        bracket = 1.0 - (r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * ct) / s2
        admissible = sq1 * np.abs(s) >= np.abs(r1 * ct + r2)
        values = scale * sq1 * sq2 * bracket * bracket
        total += float(np.sum(np.where(admissible, values, 0.0)))
    return total
