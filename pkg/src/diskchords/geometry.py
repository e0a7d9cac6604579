"""Exact geometric primitives for segments in the closed unit disk.

A segment with distinct endpoints ``a, b`` inside the unit disk is
re-parametrized by its *chord frame* ``(rho, gamma, t_a, t_b)``:

* ``rho``    distance from the origin to the infinite line through ``a, b``,
* ``gamma``  angle of the perpendicular foot ``F = rho (cos gamma, sin gamma)``,
* ``t_a, t_b``  signed offsets of the endpoints from ``F`` along the unit
  vector ``e_t = (-sin gamma, cos gamma)``, so that

      endpoint_j = rho (cos gamma, sin gamma) + t_j (-sin gamma, cos gamma).

Because ``e_rho`` and ``e_t`` are orthonormal, every endpoint satisfies
``|endpoint_j|^2 = rho^2 + t_j^2``, and the segment length is ``|t_a - t_b|``.

When the line passes through the origin (``rho = 0``) the foot angle is not
determined by the line; the convention used throughout is
``gamma = direction(b - a) + pi/2`` reduced to ``[0, 2 pi)``, the continuous
limit of nearby frames.

All functions here are pure, scalar, and allocation-light; they serve as the
reference implementations against which the vectorized kernels are checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Point2",
    "SegmentEndpoints",
    "ChordFrame",
    "ParamRoots",
    "ParallelLinesError",
    "chord_frame_from_endpoints",
    "endpoints_from_chord_frame",
    "jacobian_abs",
    "intersection_point",
    "intersection_norm_sq",
    "segment_params_at_norm_sq",
    "segment_param_of_point",
    "segments_intersect",
    "angle_between",
]

TWO_PI = 2.0 * math.pi

# Lines whose direction difference has |sin| at or below this are treated as
# parallel; the configuration has probability zero and the intersection point
# is numerically meaningless there.
PARALLEL_EPS = 1e-14

# Slack for float round-off when checking membership in the closed disk and
# the chord support |t| <= sqrt(1 - rho^2).
CONSTRUCTION_EPS = 1e-12


class ParallelLinesError(ValueError):
    """Raised when two chord lines are too close to parallel to intersect."""


@dataclass(frozen=True)
class Point2:
    """A point of the plane with finite coordinates."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class SegmentEndpoints:
    """Two distinct endpoints inside the closed unit disk."""

    a: Point2
    b: Point2

    def __post_init__(self) -> None:
        for name, p in (("a", self.a), ("b", self.b)):
            if p.norm_sq() > 1.0 + CONSTRUCTION_EPS:
                raise ValueError(f"endpoint {name}={p} lies outside the unit disk")
        if self.a.x == self.b.x and self.a.y == self.b.y:
            raise ValueError("degenerate segment: endpoints coincide")


@dataclass(frozen=True)
class ChordFrame:
    """Chord-frame coordinates (rho, gamma, t_a, t_b) of a disk segment.

    ``gamma`` is reduced to ``[0, 2 pi)`` on construction.  The offsets must
    stay inside the chord support ``|t| <= sqrt(1 - rho^2)`` up to a small
    construction tolerance, and ``t_a != t_b`` (zero-length chords are not
    representable).
    """

    rho: float
    gamma: float
    t_a: float
    t_b: float

    def __post_init__(self) -> None:
        for name, v in (("rho", self.rho), ("gamma", self.gamma),
                        ("t_a", self.t_a), ("t_b", self.t_b)):
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        object.__setattr__(self, "gamma", self.gamma % TWO_PI)
        half_span = math.sqrt(max(0.0, 1.0 - self.rho * self.rho))
        for name, t in (("t_a", self.t_a), ("t_b", self.t_b)):
            if abs(t) > half_span + CONSTRUCTION_EPS:
                raise ValueError(
                    f"{name}={t} outside chord support |t| <= {half_span}")
        if self.t_a == self.t_b:
            raise ValueError("t_a and t_b must differ")


@dataclass(frozen=True)
class ParamRoots:
    """The two interpolation parameters at which a segment's point attains a
    prescribed squared norm, sorted so that ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"roots out of order: {self.lo} > {self.hi}")


def chord_frame_from_endpoints(seg: SegmentEndpoints) -> ChordFrame:
    """Convert endpoints to chord-frame coordinates.

    The frame is built from the line normal rather than from the foot point
    itself, which keeps every component accurate to machine precision even
    when the line passes very close to the origin.

    Parameters
    ----------
    seg : SegmentEndpoints
        Segment with distinct endpoints in the closed unit disk.

    Returns
    -------
    ChordFrame
        Frame satisfying ``endpoints_from_chord_frame(frame) == seg`` up to
        1e-12 per coordinate.
    """
    ax, ay = seg.a.x, seg.a.y
    ux, uy = seg.b.x - ax, seg.b.y - ay
    length = math.hypot(ux, uy)
    dx, dy = ux / length, uy / length
    # Left normal of the direction; its signed distance from the origin
    # determines both rho and the orientation of the frame basis.
    nx, ny = -dy, dx
    s0 = ax * nx + ay * ny
    sign = 1.0 if s0 >= 0.0 else -1.0
    rho = s0 * sign
    gamma = math.atan2(sign * ny, sign * nx) % TWO_PI
    etx, ety = -sign * dx, -sign * dy
    t_a = ax * etx + ay * ety
    t_b = seg.b.x * etx + seg.b.y * ety
    return ChordFrame(rho, gamma, t_a, t_b)


def endpoints_from_chord_frame(cf: ChordFrame) -> SegmentEndpoints:
    """Reconstruct the endpoints ``rho e_rho + t_j e_t`` of a chord frame."""
    cg, sg = math.cos(cf.gamma), math.sin(cf.gamma)
    a = Point2(cf.rho * cg - cf.t_a * sg, cf.rho * sg + cf.t_a * cg)
    b = Point2(cf.rho * cg - cf.t_b * sg, cf.rho * sg + cf.t_b * cg)
    return SegmentEndpoints(a, b)


def jacobian_abs(cf: ChordFrame) -> float:
    """Absolute Jacobian of the map from chord-frame coordinates to the polar
    squared-radius/angle coordinates of the two endpoints: ``4 |t_a - t_b|``."""
    return 4.0 * abs(cf.t_a - cf.t_b)


def intersection_point(cf1: ChordFrame, cf2: ChordFrame) -> Point2:
    """Crossing point of the two infinite chord lines.

    Solves ``x cos gamma_i + y sin gamma_i = rho_i`` for both lines.  The
    denominator is ``sin(gamma_1) cos(gamma_2) - cos(gamma_1) sin(gamma_2)``,
    i.e. ``sin(gamma_1 - gamma_2)``.

    Raises
    ------
    ParallelLinesError
        If the denominator magnitude is at or below 1e-14.  Callers treat the
        pair as non-intersecting; the event has probability zero.
    """
    c1, s1 = math.cos(cf1.gamma), math.sin(cf1.gamma)
    c2, s2 = math.cos(cf2.gamma), math.sin(cf2.gamma)
    denom = s1 * c2 - c1 * s2
    if abs(denom) <= PARALLEL_EPS:
        raise ParallelLinesError(
            f"lines are near-parallel: |sin(gamma1 - gamma2)| = {abs(denom)}")
    x = (cf2.rho * s1 - cf1.rho * s2) / denom
    y = (cf1.rho * c2 - cf2.rho * c1) / denom
    return Point2(x, y)


def intersection_norm_sq(rho1: float, rho2: float,
                         gamma1: float, gamma2: float) -> float:
    """Squared distance from the origin to the crossing point of two lines.

    Closed form ``(rho1^2 + rho2^2 - 2 rho1 rho2 cos d) / sin^2 d`` with
    ``d = gamma1 - gamma2``.  Always at least ``max(rho1, rho2)^2`` up to
    round-off, since each line's closest approach to the origin is its rho.

    Raises
    ------
    ParallelLinesError
        If ``|sin d| <= 1e-14``.
    """
    d = gamma1 - gamma2
    sd = math.sin(d)
    if abs(sd) <= PARALLEL_EPS:
        raise ParallelLinesError(
            f"lines are near-parallel: |sin(gamma1 - gamma2)| = {abs(sd)}")
    return (rho1 * rho1 + rho2 * rho2 - 2.0 * rho1 * rho2 * math.cos(d)) / (sd * sd)


def segment_params_at_norm_sq(cf: ChordFrame, norm_sq: float) -> ParamRoots:
    """Interpolation parameters where ``|(1 - p) a + p b|^2`` equals ``norm_sq``.

    With ``w(p) = (1 - p) a + p b`` one has ``|w|^2 = rho^2 + t(p)^2`` where
    ``t(p) = t_a + p (t_b - t_a)``, so the two solutions are

        p = (t_a (t_a - t_b) -+ |t_a - t_b| sqrt(norm_sq - rho^2)) / (t_a - t_b)^2.

    A radicand in ``[-1e-12, 0)`` is clamped to zero (float noise around the
    tangency configuration); more negative values raise ``ValueError``.
    """
    radicand = norm_sq - cf.rho * cf.rho
    if radicand < -CONSTRUCTION_EPS:
        raise ValueError(
            f"norm_sq={norm_sq} below rho^2={cf.rho ** 2}: no real solution")
    root = math.sqrt(max(0.0, radicand))
    dt = cf.t_a - cf.t_b
    p1 = (cf.t_a * dt - abs(dt) * root) / (dt * dt)
    p2 = (cf.t_a * dt + abs(dt) * root) / (dt * dt)
    return ParamRoots(min(p1, p2), max(p1, p2))


def segment_param_of_point(cf: ChordFrame, point: Point2) -> float:
    """Parameter ``p`` with ``(1 - p) a + p b`` closest to ``point`` along the
    chord line, computed from signed offsets; exact when the point is on the
    line."""
    t = point.x * (-math.sin(cf.gamma)) + point.y * math.cos(cf.gamma)
    return (cf.t_a - t) / (cf.t_a - cf.t_b)


def _orient(ox: float, oy: float, px: float, py: float,
            qx: float, qy: float) -> float:
    """Twice the signed area of the triangle (o, p, q)."""
    return (px - ox) * (qy - oy) - (py - oy) * (qx - ox)


def _on_segment(px: float, py: float, qx: float, qy: float,
                rx: float, ry: float) -> bool:
    """Whether collinear point r lies within the bounding box of segment pq."""
    return (min(px, qx) <= rx <= max(px, qx)
            and min(py, qy) <= ry <= max(py, qy))


def segments_intersect(s1: SegmentEndpoints, s2: SegmentEndpoints) -> bool:
    """Whether the two closed segments share at least one point.

    Decided entirely from signed-area orientation predicates on the four
    endpoints, never from chord frames, so it can serve as an independent
    oracle for the chord-frame crossing characterization.  Collinear overlaps
    and endpoint touches (probability-zero configurations) count as
    intersecting.
    """
    ax, ay, bx, by = s1.a.x, s1.a.y, s1.b.x, s1.b.y
    cx, cy, dx, dy = s2.a.x, s2.a.y, s2.b.x, s2.b.y
    d1 = _orient(cx, cy, dx, dy, ax, ay)
    d2 = _orient(cx, cy, dx, dy, bx, by)
    d3 = _orient(ax, ay, bx, by, cx, cy)
    d4 = _orient(ax, ay, bx, by, dx, dy)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(cx, cy, dx, dy, ax, ay):
        return True
    if d2 == 0 and _on_segment(cx, cy, dx, dy, bx, by):
        return True
    if d3 == 0 and _on_segment(ax, ay, bx, by, cx, cy):
        return True
    if d4 == 0 and _on_segment(ax, ay, bx, by, dx, dy):
        return True
    return False


def angle_between(cf1: ChordFrame, cf2: ChordFrame) -> float:
    """Angle ``| |gamma_1 - gamma_2| - pi |`` between two chords, in [0, pi].

    The definition is even in the gamma difference, so the result is invariant
    under swapping the arguments.
    """
    return abs(abs(cf1.gamma - cf2.gamma) - math.pi)
