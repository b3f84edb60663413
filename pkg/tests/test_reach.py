import math

import numpy as np
import pytest

from frechetcover.geometry import Ball, Point, PolyCurve, Segment, ball_segment_intersection, dist
from frechetcover.frechet import PrefixMatcher, decide_frechet_subcurve
from frechetcover.reach import (build_cylinders, before, entirely_before,
                                direct_reach, propagate, decide_subset)


def test_build_cylinders_interval_matches_circle_algebra():
    curve = PolyCurve([(0, 0), (10, 0)])
    d = build_cylinders(curve, [Point(0.5, 0.5)], 1.0)
    assert d.members[0] == (0,)
    lo, hi = d.interval(0, 0)
    half = math.sqrt(0.75)  # chord half-length of a unit circle at height 0.5
    assert lo * 10 == pytest.approx(max(0.0, 0.5 - half), abs=1e-6)
    assert hi * 10 == pytest.approx(0.5 + half, abs=1e-6)
    # cross-check against the ball/segment primitive
    seg = ball_segment_intersection(Ball(Point(0.5, 0.5), 1.0 + 1e-9),
                                    Segment(Point(0, 0), Point(10, 0)))
    assert seg.a.x == pytest.approx(lo * 10, abs=1e-6)
    assert seg.b.x == pytest.approx(hi * 10, abs=1e-6)
    # unclipped window on a segment long enough both ways
    wide = build_cylinders(PolyCurve([(-5, 0), (5, 0)]), [Point(0.5, 0.5)], 1.0)
    lo2, hi2 = wide.interval(0, 0)
    assert -5 + lo2 * 10 == pytest.approx(0.5 - half, abs=1e-6)
    assert -5 + hi2 * 10 == pytest.approx(0.5 + half, abs=1e-6)


def test_build_cylinders_excludes_far_points_and_keeps_tangent():
    curve = PolyCurve([(0, 0), (10, 0)])
    d = build_cylinders(curve, [Point(5, 3)], 1.0)
    assert d.members[0] == ()
    tang = build_cylinders(curve, [Point(5, 1)], 1.0)
    lo, hi = tang.interval(0, 0)
    assert hi - lo <= 1e-4  # degenerate window at exact tangency


def test_before_orders():
    curve = PolyCurve([(0, 0), (10, 0)])
    pts = [Point(2, 0.5), Point(4, 0.5), Point(2.4, 0.0)]
    d = build_cylinders(curve, pts, 1.0)
    assert before(0, 1, 0, d) and not before(1, 0, 0, d)
    assert not entirely_before(0, 2, 0, d)  # overlapping windows
    assert entirely_before(0, 1, 0, d) is False or True  # type sanity
    far = build_cylinders(curve, [Point(1, 0.5), Point(8, 0.5)], 1.0)
    assert before(0, 1, 0, far) and entirely_before(0, 1, 0, far)
    assert not before(0, 0, 0, far) and not entirely_before(0, 0, 0, far)
    with pytest.raises(ValueError):
        before(0, 1, 0, build_cylinders(curve, [Point(1, 0.5), Point(5, 9)], 1.0))


def test_direct_reach_same_point():
    curve = PolyCurve([(0, 0), (10, 0)])
    d = build_cylinders(curve, [Point(3, 0.5)], 1.0)
    assert direct_reach(0, 0, 0, 0, d)


def test_direct_reach_across_edge():
    curve = PolyCurve([(0, 0), (10, 0)])
    d = build_cylinders(curve, [Point(0.5, 0.5), Point(9.5, -0.5)], 1.0)
    assert direct_reach(0, 0, 1, 0, d)
    assert not direct_reach(1, 0, 0, 0, d)  # backward along the edge


def test_direct_reach_blocked_by_corner_ball():
    # L-shaped curve; the hop u->v misses the ball around the corner vertex,
    # so no subcurve spanning the corner stays close to it
    curve = PolyCurve([(0, 0), (10, 0), (10, 10)])
    u, v = Point(1, 0.5), Point(9.5, 9)
    d = build_cylinders(curve, [u, v], 1.0)
    assert 0 in d.members[0] and 1 in d.members[1]
    assert not direct_reach(0, 0, 1, 1, d)
    # a hop that does thread the corner ball works
    w = Point(9.5, 0.5)
    d2 = build_cylinders(curve, [w, v], 1.0)
    assert direct_reach(0, 0, 1, 1, d2)


def test_propagate_single_segment():
    curve = PolyCurve([(0, 0), (10, 0)])
    pts = [Point(0.5, 0.5), Point(9.5, -0.5)]
    state = propagate(curve, pts, 1.0)
    assert state.sets[0] == {0, 1}
    assert state.leftmost[0] == 0
    # both reachable points carry verifiable witnesses
    for v in state.sets[0]:
        w = state.witness(v, 0)
        assert decide_frechet_subcurve(curve, w, 1.0, goal=None, free_goal=True)


def test_propagate_no_start_point():
    curve = PolyCurve([(0, 0), (10, 0)])
    state = propagate(curve, [Point(5, 0.2)], 1.0)
    assert all(not s for s in state.sets)


def test_propagate_l_shape_through_shared_corner():
    curve = PolyCurve([(0, 0), (5, 0), (5, 5)])
    pts = [Point(0.3, 0.4), Point(4.8, 0.3), Point(5.2, 4.5)]
    state = propagate(curve, pts, 1.0)
    assert 0 in state.sets[0]
    assert 2 in state.sets[1]
    assert decide_subset(curve, pts, 1.0)


def test_decide_subset_examples():
    curve = PolyCurve([(0, 0), (10, 0)])
    assert decide_subset(curve, [Point(0.5, 0.5), Point(9.5, -0.5)], 1.0)
    assert not decide_subset(curve, [], 1.0)
    zigzag = PolyCurve([(0, 0), (4, 1), (9, -1)])
    assert decide_subset(zigzag, list(zigzag.vertices), 0.0)


def _brute_force_subset(curve, pts, eps, max_len):
    """Any vertex sequence over pts (with repeats) matching the whole curve.

    Deduplicates on (last point, frontier): identical states at no-shallower
    depth cannot lead anywhere new.
    """
    stack = []
    for i, p in enumerate(pts):
        m = PrefixMatcher.start(curve, eps, p)
        if m is not None:
            stack.append((1, i, m))
    best = {}
    while stack:
        depth, last, m = stack.pop()
        if m.complete():
            return True
        if depth >= max_len:
            continue
        key = (last, m.frontier)
        if key in best and best[key] <= depth:
            continue
        best[key] = depth
        for i, p in enumerate(pts):
            nxt = m.extended(p)
            if nxt is not None:
                stack.append((depth + 1, i, nxt))
    return False


def test_decide_subset_agrees_with_brute_force():
    rng = np.random.default_rng(21)
    agree = 0
    for trial in range(60):
        n_edges = int(rng.integers(1, 5))
        verts = rng.uniform(-4, 4, size=(n_edges + 1, 2))
        curve = PolyCurve(verts)
        k = int(rng.integers(1, 6))
        pts = [Point(float(x), float(y))
               for x, y in verts[rng.integers(0, n_edges + 1, size=k)] +
               rng.normal(0, 0.8, size=(k, 2))]
        eps = float(rng.uniform(0.4, 1.6))
        got = decide_subset(curve, pts, eps)
        want = _brute_force_subset(curve, pts, eps, max_len=2 * k + 2)
        assert got == want, (verts.tolist(), [(p.x, p.y) for p in pts], eps)
        agree += 1
    assert agree == 60


def test_witnesses_are_semifeasible_on_random_instances():
    rng = np.random.default_rng(22)
    for _ in range(25):
        n_edges = int(rng.integers(1, 4))
        verts = rng.uniform(-4, 4, size=(n_edges + 1, 2))
        curve = PolyCurve(verts)
        k = int(rng.integers(1, 5))
        pts = [Point(float(x), float(y))
               for x, y in verts[rng.integers(0, n_edges + 1, size=k)] +
               rng.normal(0, 0.6, size=(k, 2))]
        eps = float(rng.uniform(0.5, 1.5))
        state = propagate(curve, pts, eps)
        for k_cyl, s in enumerate(state.sets):
            for v in s:
                w = state.witness(v, k_cyl)
                assert decide_frechet_subcurve(curve, w, eps, free_goal=True)
