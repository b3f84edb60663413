"""Continuous Fréchet decisions via free-space reachability.

The decision engine answers one generalized question: given a target curve P
and a query curve Q, do parameters t1 <= t2 on P exist (optionally confined
to given edge intervals, or pinned to the curve ends) such that the Fréchet
distance between Q and the subcurve P[t1..t2] is at most eps?  The classic
curve-to-curve decision, segment-level reachability queries, and exhaustive
"does any subcurve admit this hop" checks are all instances.

Internally the engine sweeps the free-space diagram one Q-edge row at a
time, carrying a frontier: for every P-edge, the interval of P-parameters
the sweep can currently occupy.  Frontiers are kept closed under "waiting"
(the Q-side object standing still while the P-side object advances through
free space), which is what makes prefix matching incremental: appending one
vertex to Q is a single row update.  That incremental form, PrefixMatcher,
drives the brute-force oracle's exact pruning.

The decision accepts at eps + TOL (a closed comparison): constructions in
this domain sit exactly on their bounds, and the tolerance keeps those
boundary cases decidable as feasible.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

from .geometry import (TOL, Ball, Point, PolyCurve, Segment,
                       ball_segment_interval, dist)

Interval = Tuple[float, float]
Frontier = Tuple[Optional[Interval], ...]


def _edge_interval(center: Point, r: float, a: Point, b: Point) -> Optional[Interval]:
    return ball_segment_interval(Ball(center, r), Segment(a, b))


def _curve_points(curve: PolyCurve) -> Sequence[Point]:
    """Vertex list, padded so even a single-vertex curve has one edge."""
    vs = curve.vertices
    if len(vs) == 1:
        return (vs[0], vs[0])
    return vs


def _close(pts: Sequence[Point], fr: Sequence[Optional[Interval]], q: Point,
           r: float) -> Frontier:
    """Close a frontier under rightward drift inside the free set of q."""
    out: List[Optional[Interval]] = [None] * (len(pts) - 1)
    carry = False
    for i in range(len(pts) - 1):
        free = _edge_interval(q, r, pts[i], pts[i + 1])
        cur = fr[i]
        if free is None:
            carry = False
            continue
        start = None
        if carry and free[0] <= TOL:
            start = free[0]
        if cur is not None and (start is None or cur[0] < start):
            start = max(cur[0], free[0])
        if start is None:
            carry = False
            continue
        out[i] = (start, free[1])
        carry = free[1] >= 1.0 - TOL
    return tuple(out)


def _advance(pts: Sequence[Point], fr: Frontier, q0: Point, q1: Point,
             r: float) -> Frontier:
    """One free-space row: move the Q-side object along edge q0->q1.

    fr is the closed frontier at q0; the result is the closed frontier at q1.
    """
    n = len(pts) - 1
    raw: List[Optional[Interval]] = [None] * n

    # Left wall of the first cell is climbable only from the row's corner.
    vr: Optional[Interval] = None
    if fr[0] is not None and fr[0][0] <= TOL:
        v0 = _edge_interval(pts[0], r, q0, q1)
        if v0 is not None and v0[0] <= TOL:
            vr = v0

    for i in range(n):
        bottom = fr[i]
        tfree = _edge_interval(q1, r, pts[i], pts[i + 1])
        if tfree is not None:
            if vr is not None:
                raw[i] = tfree
            elif bottom is not None:
                lo = max(tfree[0], bottom[0])
                if lo <= tfree[1]:
                    raw[i] = (lo, tfree[1])
        # right wall of this cell = left wall of the next
        wall = _edge_interval(pts[i + 1], r, q0, q1)
        if bottom is not None:
            vr = wall
        elif vr is not None and wall is not None:
            lo = max(wall[0], vr[0])
            vr = (lo, wall[1]) if lo <= wall[1] else None
        else:
            vr = None
    return _close(pts, raw, q1, r)


def _start_frontier(pts: Sequence[Point], q0: Point, r: float,
                    start: Optional[Tuple[int, float, float]],
                    anywhere: bool) -> Optional[Frontier]:
    n = len(pts) - 1
    fr: List[Optional[Interval]] = [None] * n
    if anywhere:
        for i in range(n):
            fr[i] = _edge_interval(q0, r, pts[i], pts[i + 1])
    elif start is None:
        if dist(pts[0], q0) > r:
            return None
        fr[0] = (0.0, 0.0)
    else:
        e, lo, hi = start
        free = _edge_interval(q0, r, pts[e], pts[e + 1])
        if free is None:
            return None
        a, b = max(free[0], lo), min(free[1], hi)
        if a > b + TOL:
            return None
        fr[e] = (a, min(b, free[1]))
    closed = _close(pts, fr, q0, r)
    return closed if any(iv is not None for iv in closed) else None


def _frontier_hits(fr: Frontier, goal: Optional[Tuple[int, float, float]],
                   anywhere: bool) -> bool:
    if anywhere:
        return any(iv is not None for iv in fr)
    if goal is None:
        last = fr[-1]
        return last is not None and last[1] >= 1.0 - TOL
    e, lo, hi = goal
    iv = fr[e]
    return iv is not None and iv[0] <= hi + TOL and lo <= iv[1] + TOL


def decide_frechet_subcurve(p: PolyCurve, q: PolyCurve, eps: float, *,
                            start: Optional[Tuple[int, float, float]] = None,
                            goal: Optional[Tuple[int, float, float]] = None,
                            free_start: bool = False,
                            free_goal: bool = False) -> bool:
    """Decide whether q matches some subcurve p[t1..t2] within eps.

    q is always traversed in full.  t1 ranges over the curve start (default),
    a given (edge, lo, hi) parameter window, or anywhere (free_start); t2
    likewise via goal/free_goal, with the default pinned to the curve end.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    r = eps + TOL
    pts = _curve_points(p)
    qs = _curve_points(q)
    fr = _start_frontier(pts, qs[0], r, start, free_start)
    if fr is None:
        return False
    for a, b in zip(qs, qs[1:]):
        fr = _advance(pts, fr, a, b, r)
        if not any(iv is not None for iv in fr):
            return False
    return _frontier_hits(fr, goal, free_goal)


def decide_frechet(p: PolyCurve, q: PolyCurve, eps: float) -> bool:
    """True iff the Fréchet distance between p and q is at most eps (+TOL)."""
    return decide_frechet_subcurve(p, q, eps)


def four_point_bound(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segment pair bound check, exposed for the property suite.

    With eps = max(|ab|, |cd|) the segments a->c and b->d must always be
    within eps of each other; the return value is the decision at that eps.
    """
    eps = max(dist(a, b), dist(c, d))
    return decide_frechet(PolyCurve([a, c]), PolyCurve([b, d]), eps)


def discrete_frechet(p: PolyCurve, q: PolyCurve) -> float:
    """Discrete Fréchet distance over the vertex sequences (dynamic program).

    Kept independent of the free-space engine so the two can validate each
    other.
    """
    import numpy as np

    pv = np.array([[v.x, v.y] for v in p.vertices])
    qv = np.array([[v.x, v.y] for v in q.vertices])
    d = np.hypot(pv[:, None, 0] - qv[None, :, 0], pv[:, None, 1] - qv[None, :, 1])
    n, m = d.shape
    dp = np.empty_like(d)
    dp[0, 0] = d[0, 0]
    for i in range(1, n):
        dp[i, 0] = max(dp[i - 1, 0], d[i, 0])
    for j in range(1, m):
        dp[0, j] = max(dp[0, j - 1], d[0, j])
    for i in range(1, n):
        row = dp[i]
        prev = dp[i - 1]
        for j in range(1, m):
            row[j] = max(min(prev[j], row[j - 1], prev[j - 1]), d[i, j])
    return float(dp[-1, -1])


def min_frechet(p: PolyCurve, q: PolyCurve, tol: float) -> float:
    """Smallest eps (within tol) at which the Fréchet decision accepts.

    Bisection over the boolean decision; the bracket top is the maximum
    pairwise vertex distance, which always dominates the true distance.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    hi = max(dist(a, b) for a in p.vertices for b in q.vertices)
    if decide_frechet(p, q, 0.0):
        return 0.0
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if decide_frechet(p, q, mid):
            hi = mid
        else:
            lo = mid
    return hi


def verify_schedule(schedule: Sequence[Tuple[Point, Point]], eps: float) -> bool:
    """True iff every listed pair of locations is within eps (+TOL)."""
    return all(dist(a, b) <= eps + TOL for a, b in schedule)


class FreeSpaceDiagram:
    """Materialized boundary intervals of the free space of (p, q) at eps.

    Mostly an introspection aid for tests; the decision itself runs on the
    row-sweep engine above.
    """

    def __init__(self, p: PolyCurve, q: PolyCurve, eps: float):
        self.p = p
        self.q = q
        self.eps = eps
        self._pp = _curve_points(p)
        self._qq = _curve_points(q)
        self._r = eps + TOL

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self._pp) - 1, len(self._qq) - 1)

    def horizontal_free(self, i: int, j: int) -> Optional[Interval]:
        """Free interval on P-edge i at Q-vertex j (s-parameters)."""
        return _edge_interval(self._qq[j], self._r, self._pp[i], self._pp[i + 1])

    def vertical_free(self, i: int, j: int) -> Optional[Interval]:
        """Free interval on Q-edge j at P-vertex i (t-parameters)."""
        return _edge_interval(self._pp[i], self._r, self._qq[j], self._qq[j + 1])

    def decides(self) -> bool:
        return decide_frechet(self.p, self.q, self.eps)


class PrefixMatcher:
    """Incremental matching of a growing vertex sequence against a target.

    A matcher witnesses that the sequence built so far is within eps of some
    prefix of the target starting at the target's start point.  Extending by
    a vertex is one row update; extension returns None exactly when no such
    prefix exists any more, which makes it an exact pruning rule.
    """

    __slots__ = ("_pts", "_r", "_fr", "_last")

    def __init__(self, pts, r, fr, last):
        self._pts = pts
        self._r = r
        self._fr = fr
        self._last = last

    @classmethod
    def start(cls, target: PolyCurve, eps: float, first: Point) -> Optional["PrefixMatcher"]:
        r = eps + TOL
        pts = _curve_points(target)
        fr = _start_frontier(pts, first, r, None, False)
        if fr is None:
            return None
        return cls(pts, r, fr, first)

    def extended(self, nxt: Point) -> Optional["PrefixMatcher"]:
        fr = _advance(self._pts, self._fr, self._last, nxt, self._r)
        if not any(iv is not None for iv in fr):
            return None
        return PrefixMatcher(self._pts, self._r, fr, nxt)

    def complete(self) -> bool:
        """True iff the full target is matched by the sequence so far."""
        last = self._fr[-1]
        return last is not None and last[1] >= 1.0 - TOL

    @property
    def frontier(self) -> Frontier:
        return self._fr
