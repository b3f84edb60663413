"""Planar geometric primitives used by every other module.

All predicates share one absolute tolerance ``TOL``.  The instances this
library works with have coordinates of modest magnitude (tens), and the
smallest genuine separation in any construction is a few hundredths, so a
single 1e-9 slack keeps every comparison far from both failure modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

TOL = 1e-9


class GeometryError(ValueError):
    """Degenerate or ambiguous geometric query."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def close_to(self, other: "Point", tol: float = TOL) -> bool:
        return abs(self.x - other.x) <= tol and abs(self.y - other.y) <= tol


def as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def length(self) -> float:
        return dist(self.a, self.b)

    def is_degenerate(self) -> bool:
        return self.length() <= TOL

    def point_at(self, t: float) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x),
                     self.a.y + t * (self.b.y - self.a.y))


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise GeometryError("negative radius")


class PolyCurve:
    """Polygonal curve with at least one vertex.

    Consecutive duplicate vertices are allowed; they occur naturally when
    a tour detours to a point and returns.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable):
        vs = tuple(as_point(v) for v in vertices)
        if not vs:
            raise GeometryError("empty curve")
        object.__setattr__(self, "vertices", vs)

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> Iterator[Segment]:
        for a, b in zip(self.vertices, self.vertices[1:]):
            yield Segment(a, b)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyCurve) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self) -> str:
        inner = ", ".join(f"({p.x:g}, {p.y:g})" for p in self.vertices)
        return f"PolyCurve[{inner}]"


def dist(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def point_segment_distance(p: Point, s: Segment) -> float:
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    den = dx * dx + dy * dy
    if den <= TOL * TOL:
        return dist(p, s.a)
    t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / den
    t = min(1.0, max(0.0, t))
    return dist(p, s.point_at(t))


def perpendicular_foot(p: Point, s: Segment) -> Optional[Point]:
    """Foot of the perpendicular from p onto s, or None if it falls outside s."""
    if s.is_degenerate():
        raise GeometryError("perpendicular foot on degenerate segment")
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / (dx * dx + dy * dy)
    if t < -TOL or t > 1.0 + TOL:
        return None
    return s.point_at(min(1.0, max(0.0, t)))


def segment_intersection(s1: Segment, s2: Segment) -> Optional[Point]:
    """Unique crossing point of two segments.

    Returns None for disjoint or parallel segments.  Collinear segments that
    overlap in more than one point are ambiguous and raise GeometryError;
    collinear segments touching in exactly one point return that point.
    """
    d1x, d1y = s1.b.x - s1.a.x, s1.b.y - s1.a.y
    d2x, d2y = s2.b.x - s2.a.x, s2.b.y - s2.a.y
    den = d1x * d2y - d1y * d2x
    wx, wy = s2.a.x - s1.a.x, s2.a.y - s1.a.y
    if abs(den) <= TOL:
        cross = d1x * wy - d1y * wx
        if abs(cross) > TOL:
            return None  # parallel, not collinear
        return _collinear_touch(s1, s2)
    t = (wx * d2y - wy * d2x) / den
    u = (wx * d1y - wy * d1x) / den
    if -TOL <= t <= 1.0 + TOL and -TOL <= u <= 1.0 + TOL:
        return s1.point_at(min(1.0, max(0.0, t)))
    return None


def _collinear_touch(s1: Segment, s2: Segment) -> Optional[Point]:
    dx, dy = s1.b.x - s1.a.x, s1.b.y - s1.a.y
    den = dx * dx + dy * dy
    if den <= TOL * TOL:
        # s1 is a point; overlap is at most that point
        if point_segment_distance(s1.a, s2) <= TOL:
            return s1.a
        return None
    ta = ((s2.a.x - s1.a.x) * dx + (s2.a.y - s1.a.y) * dy) / den
    tb = ((s2.b.x - s1.a.x) * dx + (s2.b.y - s1.a.y) * dy) / den
    lo, hi = min(ta, tb), max(ta, tb)
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if hi < lo - TOL:
        return None
    span = (hi - lo) * math.sqrt(den)
    if span > TOL:
        raise GeometryError("collinear overlapping segments have no unique intersection")
    return s1.point_at(min(1.0, max(0.0, 0.5 * (lo + hi))))


def ball_segment_interval(b: Ball, s: Segment) -> Optional[tuple]:
    """Parameter interval [lo, hi] of s inside the closed ball, or None."""
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    fx, fy = s.a.x - b.center.x, s.a.y - b.center.y
    aa = dx * dx + dy * dy
    if aa <= TOL * TOL:
        return (0.0, 1.0) if math.hypot(fx, fy) <= b.radius + TOL else None
    bb = 2.0 * (fx * dx + fy * dy)
    cc = fx * fx + fy * fy - b.radius * b.radius
    disc = bb * bb - 4.0 * aa * cc
    if disc < 0.0:
        # allow exact tangency to survive roundoff
        if disc < -TOL * aa:
            return None
        disc = 0.0
    sq = math.sqrt(disc)
    t0 = (-bb - sq) / (2.0 * aa)
    t1 = (-bb + sq) / (2.0 * aa)
    lo, hi = max(t0, 0.0), min(t1, 1.0)
    if lo > hi:
        return None
    return (lo, hi)


def ball_segment_intersection(b: Ball, s: Segment) -> Optional[Segment]:
    """Subsegment of s inside the closed ball (possibly degenerate), or None."""
    iv = ball_segment_interval(b, s)
    if iv is None:
        return None
    return Segment(s.point_at(iv[0]), s.point_at(iv[1]))


def midpoint(s: Segment) -> Point:
    return Point(0.5 * (s.a.x + s.b.x), 0.5 * (s.a.y + s.b.y))


def concat(a: PolyCurve, b: PolyCurve) -> PolyCurve:
    """Concatenate two curves, merging a shared endpoint."""
    if a.end.close_to(b.start):
        return PolyCurve(a.vertices + b.vertices[1:])
    return PolyCurve(a.vertices + b.vertices)


def densified(curve: PolyCurve, step: float) -> PolyCurve:
    """Subdivide every edge so no edge is longer than step."""
    if step <= 0:
        raise GeometryError("step must be positive")
    out = [curve.vertices[0]]
    for seg in curve.edges():
        n = max(1, math.ceil(seg.length() / step))
        out.extend(seg.point_at(i / n) for i in range(1, n + 1))
    return PolyCurve(out)


def _shoelace(vs: Sequence[Point]) -> float:
    area = 0.0
    for p, q in zip(vs, vs[1:] + vs[:1]):
        area += p.x * q.y - q.x * p.y
    return 0.5 * area


class ConvexPolygon:
    """Strictly convex polygon stored in clockwise vertex order.

    Input in either orientation is normalized on construction.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable):
        vs = [as_point(v) for v in vertices]
        if len(vs) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        if _shoelace(vs) > 0:  # counterclockwise in y-up coordinates
            vs.reverse()
        n = len(vs)
        for i in range(n):
            p, q, r = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
            cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x)
            if cross >= -TOL:
                raise GeometryError("vertices are not strictly convex in order")
        object.__setattr__(self, "vertices", tuple(vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[Segment]:
        vs = self.vertices
        for i in range(len(vs)):
            yield Segment(vs[i], vs[(i + 1) % len(vs)])

    def closest_boundary_point(self, p: Point) -> Point:
        best, best_d = None, math.inf
        for seg in self.edges():
            dx, dy = seg.b.x - seg.a.x, seg.b.y - seg.a.y
            den = dx * dx + dy * dy
            t = 0.0 if den <= TOL * TOL else min(1.0, max(0.0, (
                (p.x - seg.a.x) * dx + (p.y - seg.a.y) * dy) / den))
            q = seg.point_at(t)
            d = dist(p, q)
            if d < best_d - TOL:
                best, best_d = q, d
        return best

    def boundary_distance(self, p: Point) -> float:
        return min(point_segment_distance(p, e) for e in self.edges())

    def width_height(self) -> tuple:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return max(xs) - min(xs), max(ys) - min(ys)

    def __repr__(self) -> str:
        inner = ", ".join(f"({p.x:g}, {p.y:g})" for p in self.vertices)
        return f"ConvexPolygon[{inner}]"


def convex_hull(points: Iterable) -> ConvexPolygon:
    """Convex hull as a clockwise polygon (monotone chain).

    Raises GeometryError for fewer than 3 distinct points or collinear input.
    """
    pts = sorted({(p.x, p.y) for p in map(as_point, points)})
    if len(pts) < 3:
        raise GeometryError("hull needs at least 3 distinct points")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (p[1] - ay) - (ay - oy) * (p[0] - ax) <= TOL:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    ccw = lower[:-1] + upper[:-1]
    if len(ccw) < 3:
        raise GeometryError("points are collinear")
    cw = [ccw[0]] + list(reversed(ccw[1:]))
    return ConvexPolygon(Point(x, y) for x, y in cw)
