"""Feasibility of a covering tour along a convex polygon's boundary.

The boundary is opened into a curve at the projection of the point set's
leftmost point, reachability is propagated along its cylinders, reachable
(point, cylinder) pairs are classified by whether they can pass the baton to
the next cylinder's leftmost entry point, and a covering tour is built
greedily with backtracking.  Points that block both chains of the polygon
(twice-bad points) get dedicated reroutes along the upper or lower chain.

Tour construction is certified step by step with an incremental prefix
matcher, so a returned witness always carries a real matching; every YES is
nevertheless re-verified independently (coverage plus a fresh Fréchet
decision) and an inconsistency raises instead of returning a wrong YES.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .geometry import (TOL, ConvexPolygon, GeometryError, Point, PolyCurve,
                       Segment, convex_hull, dist, point_segment_distance)
from .frechet import PrefixMatcher, decide_frechet
from . import reach


class ConstructionError(RuntimeError):
    """A constructed witness failed its independent re-verification."""


class PointType(enum.Enum):
    GOOD = "good"
    B1 = "b1"
    B2 = "b2"
    B3 = "b3"


SEMI_BAD = (PointType.B1, PointType.B2, PointType.B3)


def boundary_curve(polygon: ConvexPolygon, z: Point) -> PolyCurve:
    """Clockwise traversal of the boundary starting and ending at z.

    z must lie on the boundary (within tolerance); the edge containing it is
    split unless z is a vertex.
    """
    verts = polygon.vertices
    n = len(verts)
    for i, v in enumerate(verts):
        if z.close_to(v, 1e-7):
            ring = verts[i:] + verts[:i]
            return PolyCurve(ring + (verts[i],))
    for i in range(n):
        seg = Segment(verts[i], verts[(i + 1) % n])
        if point_segment_distance(z, seg) <= 1e-7:
            ring = verts[(i + 1) % n:] + verts[:(i + 1) % n]
            return PolyCurve((z,) + ring + (z,))
    raise GeometryError("start point is not on the polygon boundary")


def _rho_edge_map(polygon: ConvexPolygon, rho: PolyCurve) -> List[int]:
    """Polygon-edge index carrying each edge of the boundary curve."""
    edges = list(polygon.edges())
    out = []
    for seg in rho.edges():
        mid = Point(0.5 * (seg.a.x + seg.b.x), 0.5 * (seg.a.y + seg.b.y))
        best = min(range(len(edges)),
                   key=lambda i: point_segment_distance(mid, edges[i]))
        out.append(best)
    return out


@dataclass(frozen=True)
class ConvexInstance:
    polygon: ConvexPolygon
    points: Tuple[Point, ...]
    eps: float
    anchor: int              # index of the leftmost point of the set
    anchor_boundary: Point   # its boundary projection; the curve's two ends
    rho: PolyCurve
    edge_map: Tuple[int, ...]


def anchor_start(polygon: ConvexPolygon, points: Sequence[Point],
                 eps: float) -> Optional[Tuple[int, Point]]:
    """Leftmost point of the set and its boundary projection.

    None when the projection is farther than eps, which already decides NO.
    """
    if not points:
        raise ValueError("empty point set")
    idx = min(range(len(points)), key=lambda i: (points[i].x, points[i].y, i))
    x = points[idx]
    xp = polygon.closest_boundary_point(x)
    if dist(x, xp) > eps + TOL:
        return None
    return idx, xp


def build_instance(polygon: ConvexPolygon, points: Sequence[Point],
                   eps: float) -> Optional[ConvexInstance]:
    anchored = anchor_start(polygon, points, eps)
    if anchored is None:
        return None
    idx, xp = anchored
    rho = boundary_curve(polygon, xp)
    return ConvexInstance(polygon, tuple(points), eps, idx, xp, rho,
                          tuple(_rho_edge_map(polygon, rho)))


def hull_precondition(polygon: ConvexPolygon, points: Sequence[Point],
                      eps: float) -> bool:
    """Necessary condition: the point set's hull boundary must track the
    polygon boundary within eps from matched anchors.

    Vacuously true for fewer than 3 points or collinear sets (no hull
    polygon exists; the main decision handles those directly).
    """
    try:
        hull = convex_hull(points)
    except GeometryError:
        return True
    anchored = anchor_start(polygon, points, eps)
    if anchored is None:
        return False
    idx, _ = anchored
    x = points[idx]
    z = min(hull.vertices, key=lambda v: (dist(v, x), v.x, v.y))
    zp = polygon.closest_boundary_point(z)
    if dist(z, zp) > eps + TOL:
        return False
    return decide_frechet(boundary_curve(hull, z),
                          boundary_curve(polygon, zp), eps)


# --- classification ---------------------------------------------------------

def _next_nonempty(state: reach.ReachState, k: int) -> Optional[int]:
    for j in range(k + 1, len(state.sets)):
        if state.sets[j]:
            return j
    return None


def _bounded_reach(state: reach.ReachState, u: int, i: int, v: int,
                   j: int) -> bool:
    """Can u (at cylinder i) feed a tour ending at v (at cylinder j)?

    Tries the direct hop, then chains through one or two already-reachable
    intermediates (one from R_i, one from R_j); each candidate chain is
    certified by a free-space query, so extra candidates cannot overclaim.
    """
    d = state.decomposition
    if reach.direct_reach(u, i, v, j, d):
        return True
    mids_i = [w for w in state.sets[i] if w != u]
    mids_j = [w for w in state.sets[j] if w != v]
    for w in sorted(mids_i):
        if reach.chain_reach((u, w, v), i, j, d):
            return True
    for w in sorted(mids_j):
        if reach.chain_reach((u, w, v), i, j, d):
            return True
    for w in sorted(mids_i):
        for w2 in sorted(mids_j):
            if reach.chain_reach((u, w, w2, v), i, j, d):
                return True
    return False


def classify(state: reach.ReachState,
             inst: ConvexInstance) -> Dict[Tuple[int, int], PointType]:
    """Type of every reachable (point, cylinder) pair.

    GOOD: some tour through the point can end at the next nonempty
    cylinder's leftmost entry point.  B1: it reaches another point of that
    set instead.  B2: it skips that set but reaches a later one.  B3: it
    reaches nothing downstream.  Pairs in the last nonempty cylinder have
    nothing to reach and count as GOOD.
    """
    types: Dict[Tuple[int, int], PointType] = {}
    for i, members in enumerate(state.sets):
        if not members:
            continue
        j = _next_nonempty(state, i)
        if j is None:
            for u in members:
                types[(u, i)] = PointType.GOOD
            continue
        lam = state.leftmost[j]
        d = state.decomposition
        for u in sorted(members):
            if _bounded_reach(state, u, i, lam, j):
                types[(u, i)] = PointType.GOOD
            elif any(reach.direct_reach(u, i, v, j, d)
                     for v in sorted(state.sets[j]) if v != lam):
                types[(u, i)] = PointType.B1
            else:
                later = False
                m = _next_nonempty(state, j)
                while m is not None:
                    if any(reach.direct_reach(u, i, v, m, d)
                           for v in sorted(state.sets[m])):
                        later = True
                        break
                    m = _next_nonempty(state, m)
                types[(u, i)] = PointType.B2 if later else PointType.B3
    return types


def fatally_blocked(state: reach.ReachState,
                    types: Dict[Tuple[int, int], PointType]) -> Optional[int]:
    """A point that is B3 at every cylinder where it is reachable, if any."""
    for v in range(len(state.decomposition.points)):
        cyls = state.reachable_cylinders(v)
        if cyls and all(types[(v, k)] is PointType.B3 for k in cyls):
            return v
    return None


# --- twice-bad areas --------------------------------------------------------

@dataclass(frozen=True)
class DoubleBArea:
    """A connected overlap of an upper-chain and a lower-chain cylinder that
    contains at least one point blocked on both chains."""

    pairs: Tuple[Tuple[int, int], ...]   # (upper cylinder, lower cylinder)
    points: Tuple[int, ...]


def chain_split(inst: ConvexInstance) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Cylinder indices of the two chains of the polygon.

    The polygon is split at its extreme vertices along the axis of larger
    extent; the chain walked first from the curve start is reported first.
    """
    poly = inst.polygon
    verts = poly.vertices
    n = len(verts)
    w, h = poly.width_height()
    if w >= h:
        lo = min(range(n), key=lambda i: (verts[i].x, verts[i].y))
        hi = max(range(n), key=lambda i: (verts[i].x, -verts[i].y))
    else:
        lo = min(range(n), key=lambda i: (verts[i].y, verts[i].x))
        hi = max(range(n), key=lambda i: (verts[i].y, -verts[i].x))
    first: Set[int] = set()
    i = lo
    while i != hi:
        first.add(i)       # polygon edge i runs verts[i] -> verts[i+1]
        i = (i + 1) % n
    second = set(range(n)) - first
    chain_a = frozenset(k for k, e in enumerate(inst.edge_map) if e in first)
    chain_b = frozenset(k for k, e in enumerate(inst.edge_map) if e in second)
    return chain_a, chain_b


def find_doubleb(types: Dict[Tuple[int, int], PointType],
                 state: reach.ReachState,
                 inst: ConvexInstance) -> List[DoubleBArea]:
    """Connected upper-lower cylinder overlaps holding twice-bad points.

    Overlap regions are convex (cylinder intersections); regions are merged
    into connected components when they intersect.  More than two areas
    contradicts the chain geometry and raises.
    """
    chain_a, chain_b = chain_split(inst)
    triples: List[Tuple[int, int, int]] = []
    for (v, k), t in sorted(types.items()):
        if t not in SEMI_BAD:
            continue
        for (v2, k2), t2 in sorted(types.items()):
            if v2 != v or k2 == k or t2 not in SEMI_BAD:
                continue
            if k in chain_a and k2 in chain_b:
                triples.append((v, k, k2))
    if not triples:
        return []

    from shapely.geometry import LineString
    from shapely.ops import unary_union

    edges = list(inst.rho.edges())

    def cyl(k: int):
        seg = edges[k]
        return LineString([(seg.a.x, seg.a.y), (seg.b.x, seg.b.y)]).buffer(
            inst.eps, quad_segs=32)

    pair_keys = sorted({(ku, kl) for _, ku, kl in triples})
    regions = {pk: cyl(pk[0]).intersection(cyl(pk[1])) for pk in pair_keys}
    merged = unary_union([regions[pk] for pk in pair_keys])
    components = list(merged.geoms) if merged.geom_type == "MultiPolygon" else [merged]

    areas: List[DoubleBArea] = []
    for comp in components:
        pairs = tuple(pk for pk in pair_keys
                      if not regions[pk].is_empty and comp.intersects(
                          regions[pk].representative_point()))
        pts = tuple(sorted({v for v, ku, kl in triples if (ku, kl) in pairs}))
        if pairs and pts:
            areas.append(DoubleBArea(pairs, pts))
    if len(areas) > 2:
        raise ConstructionError(
            f"{len(areas)} double-blocked areas; the chain geometry allows two")
    return areas


# --- tour construction -------------------------------------------------------

@dataclass
class _WalkStep:
    point: int
    cylinder: int
    matcher: PrefixMatcher
    sticky: bool


class _Walk:
    """Greedy covering tour driven by a certified prefix matcher."""

    def __init__(self, state: reach.ReachState, inst: ConvexInstance):
        self.state = state
        self.inst = inst
        self.d = state.decomposition
        start = PrefixMatcher.start(inst.rho, inst.eps,
                                    inst.points[inst.anchor])
        if start is None:
            raise ConstructionError("anchor cannot begin a matching")
        self.steps: List[_WalkStep] = [
            _WalkStep(inst.anchor, 0, start, True)]

    @property
    def matcher(self) -> PrefixMatcher:
        return self.steps[-1].matcher

    def try_append(self, v: int, k: int, sticky: bool = False) -> bool:
        nxt = self.matcher.extended(self.inst.points[v])
        if nxt is None:
            return False
        self.steps.append(_WalkStep(v, k, nxt, sticky))
        return True

    def pop_tail(self) -> bool:
        """Drop the last step unless it is sticky or the anchor."""
        if len(self.steps) <= 1 or self.steps[-1].sticky:
            return False
        self.steps.pop()
        return True

    def visited(self) -> Set[int]:
        return {s.point for s in self.steps}

    def tour(self) -> PolyCurve:
        return PolyCurve([self.inst.points[s.point] for s in self.steps])


def _visit_order(state: reach.ReachState, k: int) -> List[int]:
    """Members of cylinder k, leftmost entry first, then by window order."""
    d = state.decomposition
    members = sorted(state.sets[k],
                     key=lambda v: (d.interval(v, k)[0], d.interval(v, k)[1], v))
    lam = state.leftmost[k]
    if lam in members:
        members.remove(lam)
        members.insert(0, lam)
    return members


def _build_tour(state: reach.ReachState, inst: ConvexInstance,
                sticky: FrozenSet[Tuple[int, int]]) -> Optional[PolyCurve]:
    """One pass over the cylinders, visiting every reachable point that the
    certified matching allows.

    At each nonempty cylinder the walk first tries to enter at the leftmost
    entry point, backtracking over non-sticky tail vertices when the current
    tail cannot hand over; whatever remains appendable is then visited in
    window order until a fixpoint.  Sticky vertices (the twice-bad points a
    reroute must keep) are never popped; when they block the leftmost entry
    the walk enters at the first appendable member instead.
    """
    walk = _Walk(state, inst)
    pts = inst.points
    for k in range(len(state.sets)):
        if not state.sets[k]:
            continue
        order = _visit_order(state, k)
        lam = order[0]
        appended: Set[int] = set()
        if walk.try_append(lam, k, sticky=(lam, k) in sticky):
            appended.add(lam)
        else:
            # backtrack: find the deepest non-sticky truncation whose tail
            # can still hand over to the leftmost entry point (probed on the
            # stored matchers, so nothing is lost when no cut works)
            cut = None
            limit = len(walk.steps) - 1
            while limit >= 1:
                if walk.steps[limit].sticky:
                    break
                if walk.steps[limit - 1].matcher.extended(pts[lam]) is not None:
                    cut = limit
                    break
                limit -= 1
            if cut is not None:
                del walk.steps[cut:]
                walk.try_append(lam, k, sticky=(lam, k) in sticky)
                appended.add(lam)
        remaining = [v for v in order if v not in appended]
        progress = True
        while progress:
            progress = False
            leftover = []
            for v in remaining:
                if walk.try_append(v, k, sticky=(v, k) in sticky):
                    progress = True
                else:
                    leftover.append(v)
            remaining = leftover
    # finish: the boundary's tail must be absorbable by the final vertex
    while not walk.matcher.complete():
        if not walk.pop_tail():
            return None
    return walk.tour()


def _covers(tour: PolyCurve, inst: ConvexInstance) -> bool:
    have = set()
    for v in tour.vertices:
        for i, p in enumerate(inst.points):
            if v.close_to(p):
                have.add(i)
    return len(have) == len(inst.points)


def build_alpha(state: reach.ReachState, inst: ConvexInstance) -> Optional[PolyCurve]:
    """The base covering tour (no reroutes)."""
    return _build_tour(state, inst, frozenset())


def modify_for_twiceb(alpha: Optional[PolyCurve], area: DoubleBArea,
                      chain: str, state: reach.ReachState,
                      inst: ConvexInstance) -> Optional[PolyCurve]:
    """Reroute so the area's twice-bad points are kept on the given chain.

    chain is "upper" (first chain from the curve start) or "lower".
    """
    chain_a, chain_b = chain_split(inst)
    use = chain_a if chain == "upper" else chain_b
    cyls = {ku for ku, kl in area.pairs} if chain == "upper" else \
        {kl for ku, kl in area.pairs}
    sticky = frozenset((v, k) for v in area.points for k in cyls
                       if k in use and v in state.sets[k])
    if not sticky:
        return alpha
    return _build_tour(state, inst, sticky)


def _sticky_for(areas: Sequence[DoubleBArea], chain: str,
                chain_sets: Tuple[FrozenSet[int], FrozenSet[int]],
                state: reach.ReachState) -> FrozenSet[Tuple[int, int]]:
    use = chain_sets[0] if chain == "upper" else chain_sets[1]
    out: Set[Tuple[int, int]] = set()
    for area in areas:
        cyls = {ku for ku, kl in area.pairs} if chain == "upper" else \
            {kl for ku, kl in area.pairs}
        out.update((v, k) for v in area.points for k in cyls
                   if k in use and v in state.sets[k])
    return frozenset(out)


def decide_convex(polygon: ConvexPolygon, points: Sequence[Point],
                  eps: float) -> Tuple[bool, Optional[PolyCurve]]:
    """Decide whether a tour through every point tracks the boundary within
    eps; on YES, return a verified witness tour."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if not points:
        return False, None  # a tour needs at least one vertex from the set
    inst = build_instance(polygon, points, eps)
    if inst is None:
        return False, None
    state = reach.propagate(inst.rho, inst.points, eps)

    for v in range(len(inst.points)):
        if not state.reachable_cylinders(v):
            return False, None
    end = inst.rho.end
    if not any(dist(inst.points[v], end) <= eps + TOL for v in state.sets[-1]):
        return False, None

    types = classify(state, inst)
    if fatally_blocked(state, types) is not None:
        return False, None

    candidates: List[Optional[PolyCurve]] = [build_alpha(state, inst)]
    areas = find_doubleb(types, state, inst)
    if areas:
        chains = chain_split(inst)
        for chain in ("upper", "lower"):
            sticky = _sticky_for(areas, chain, chains, state)
            if sticky:
                candidates.append(_build_tour(state, inst, sticky))

    for cand in candidates:
        if cand is None or not _covers(cand, inst):
            continue
        if not decide_frechet(cand, inst.rho, eps):
            raise ConstructionError(
                "constructed tour failed its independent distance check")
        return True, cand
    return False, None


def minimize_convex(polygon: ConvexPolygon, points: Sequence[Point],
                    tol: float) -> float:
    """Smallest eps (within tol) at which decide_convex accepts."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    corners = list(polygon.vertices) + list(points)
    hi = max(dist(a, b) for a in corners for b in corners)
    if decide_convex(polygon, points, 0.0)[0]:
        return 0.0
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if decide_convex(polygon, points, mid)[0]:
            hi = mid
        else:
            lo = mid
    return hi
