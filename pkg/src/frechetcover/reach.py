"""Cylinder decomposition and reachability propagation along a curve.

A point v of the input set is *reachable* at cylinder k (the eps-cylinder
around curve edge k) when some curve with vertices from the set ends at v
while staying within eps Fréchet distance of a prefix of the target curve.
The sets R_k of reachable points are built left to right: entry points of a
cylinder are those directly reachable from any earlier set, the leftmost
entry point then pulls in the rest of its own cylinder.

Points are identified by their index into the input list, so duplicate
coordinates are distinct points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .geometry import TOL, Ball, Point, PolyCurve, Segment, ball_segment_interval, dist
from .frechet import decide_frechet_subcurve

Interval = Tuple[float, float]


@dataclass(frozen=True)
class CylinderDecomposition:
    """Per-edge point memberships and chord intervals.

    intervals[k][v] is the parameter window of edge k inside the eps-ball of
    point v; members[k] lists the point indices with a nonempty window.
    """

    curve: PolyCurve
    points: Tuple[Point, ...]
    eps: float
    intervals: Tuple[Dict[int, Interval], ...]
    members: Tuple[Tuple[int, ...], ...]

    @property
    def cylinder_count(self) -> int:
        return len(self.members)

    def interval(self, v: int, k: int) -> Interval:
        try:
            return self.intervals[k][v]
        except KeyError:
            raise ValueError(f"point {v} is not a member of cylinder {k}") from None


def build_cylinders(curve: PolyCurve, points: Sequence[Point], eps: float) -> CylinderDecomposition:
    pts = tuple(points)
    edges = list(curve.edges()) or [Segment(curve.start, curve.start)]
    r = eps + TOL
    intervals: List[Dict[int, Interval]] = []
    members: List[Tuple[int, ...]] = []
    for seg in edges:
        here: Dict[int, Interval] = {}
        for i, p in enumerate(pts):
            iv = ball_segment_interval(Ball(p, r), seg)
            if iv is not None:
                here[i] = iv
        intervals.append(here)
        members.append(tuple(sorted(here)))
    return CylinderDecomposition(curve, pts, eps, tuple(intervals), tuple(members))


def before(u: int, v: int, k: int, d: CylinderDecomposition) -> bool:
    """u starts earlier than v along edge k."""
    return d.interval(u, k)[0] < d.interval(v, k)[0]


def entirely_before(u: int, v: int, k: int, d: CylinderDecomposition) -> bool:
    """u's window ends before v's begins on edge k."""
    return d.interval(u, k)[1] < d.interval(v, k)[0]


def direct_reach(u: int, i: int, v: int, j: int, d: CylinderDecomposition) -> bool:
    """Can the single hop u->v extend a match from cylinder i to cylinder j?

    True iff parameters t1 in the u-window of edge i and t2 >= t1 in the
    v-window of edge j exist with the segment u->v within eps Fréchet
    distance of the curve between them.
    """
    if j < i:
        raise ValueError("hops only go forward along the curve")
    lo_u, hi_u = d.interval(u, i)
    lo_v, hi_v = d.interval(v, j)
    hop = PolyCurve([d.points[u], d.points[v]])
    return decide_frechet_subcurve(d.curve, hop, d.eps,
                                   start=(i, lo_u, hi_u), goal=(j, lo_v, hi_v))


def chain_reach(chain: Sequence[int], i: int, j: int, d: CylinderDecomposition) -> bool:
    """Like direct_reach for a multi-vertex hop chain[0] -> ... -> chain[-1].

    The first vertex is anchored to its window on edge i, the last to its
    window on edge j; intermediate vertices may match anywhere between.
    """
    if j < i:
        raise ValueError("hops only go forward along the curve")
    lo_u, hi_u = d.interval(chain[0], i)
    lo_v, hi_v = d.interval(chain[-1], j)
    hop = PolyCurve([d.points[c] for c in chain])
    return decide_frechet_subcurve(d.curve, hop, d.eps,
                                   start=(i, lo_u, hi_u), goal=(j, lo_v, hi_v))


@dataclass
class ReachState:
    """Reachability sets, leftmost entry points, and predecessor links."""

    decomposition: CylinderDecomposition
    sets: Tuple[frozenset, ...]
    leftmost: Tuple[Optional[int], ...]
    preds: Dict[Tuple[int, int], Optional[Tuple[int, int]]] = field(default_factory=dict)

    def reachable_cylinders(self, v: int) -> List[int]:
        return [k for k, s in enumerate(self.sets) if v in s]

    def witness(self, v: int, k: int) -> PolyCurve:
        """One semi-feasible curve ending at point v in cylinder k."""
        if (v, k) not in self.preds:
            raise ValueError(f"point {v} is not reachable at cylinder {k}")
        seq: List[int] = []
        cur: Optional[Tuple[int, int]] = (v, k)
        while cur is not None:
            seq.append(cur[0])
            cur = self.preds[cur]
        seq.reverse()
        return PolyCurve([self.decomposition.points[s] for s in seq])


def _leftmost_of(entries: Sequence[int], k: int, d: CylinderDecomposition) -> int:
    def key(v: int):
        lo, hi = d.interval(v, k)
        p = d.points[v]
        return (lo, hi, p.x, p.y, v)
    return min(entries, key=key)


def propagate(curve: PolyCurve, points: Sequence[Point], eps: float) -> ReachState:
    """Build the reachability sets R_1..R_n for the curve's cylinders."""
    d = build_cylinders(curve, points, eps)
    n = d.cylinder_count
    sets: List[set] = [set() for _ in range(n)]
    leftmost: List[Optional[int]] = [None] * n
    preds: Dict[Tuple[int, int], Optional[Tuple[int, int]]] = {}

    for k in range(n):
        entries: List[int] = []
        if k == 0:
            for v in d.members[0]:
                if dist(d.points[v], curve.start) <= eps + TOL:
                    entries.append(v)
                    preds[(v, 0)] = None
        else:
            for v in d.members[k]:
                found = None
                for i in range(k):
                    for w in sorted(sets[i]):
                        if direct_reach(w, i, v, k, d):
                            found = (w, i)
                            break
                    if found:
                        break
                if found:
                    entries.append(v)
                    preds[(v, k)] = found
        if not entries:
            continue
        lam = _leftmost_of(entries, k, d)
        leftmost[k] = lam
        sets[k].update(entries)
        for v in d.members[k]:
            if v in sets[k]:
                continue
            if direct_reach(lam, k, v, k, d):
                sets[k].add(v)
                preds[(v, k)] = (lam, k)

    return ReachState(d, tuple(frozenset(s) for s in sets), tuple(leftmost), preds)


def decide_subset(curve: PolyCurve, points: Sequence[Point], eps: float) -> bool:
    """Does a curve through SOME of the points stay within eps of the curve?

    Accepts iff the final cylinder's reachability set meets the eps-ball of
    the curve's endpoint.
    """
    state = propagate(curve, points, eps)
    end = curve.end
    last = state.sets[-1]
    return any(dist(state.decomposition.points[v], end) <= eps + TOL for v in last)
