import time

import numpy as np
import pytest

from frechetcover import sat
from frechetcover.geometry import Point, PolyCurve
from frechetcover.oracle import (EnumerationBudget, OracleResult,
                                 default_budget, enumerate_feasible,
                                 is_feasible, survey_candidate_paths,
                                 FEASIBLE, INFEASIBLE, EXHAUSTED)


def test_is_feasible_examples():
    target = PolyCurve([(0, 0), (4, 1), (9, -1)])
    pts = list(target.vertices)
    assert is_feasible(target, target, pts, 0.0)
    assert not is_feasible(PolyCurve(pts[:2]), target, pts, 10.0)  # misses one
    outside = PolyCurve(pts + [Point(50, 50)])
    assert not is_feasible(outside, target, pts, 10.0)  # vertex not in the set


def test_enumerate_trivial_feasible():
    target = PolyCurve([(0, 0), (10, 0)])
    pts = [Point(0.5, 0.5), Point(9.5, -0.5)]
    res = enumerate_feasible(target, pts, 1.0, EnumerationBudget(4))
    assert res.verdict == FEASIBLE
    assert res.witness.vertices == (pts[0], pts[1])
    assert is_feasible(res.witness, target, pts, 1.0)


def test_enumerate_infeasible_far_point():
    target = PolyCurve([(0, 0), (10, 0)])
    pts = [Point(0.5, 0.5), Point(5, 5)]
    res = enumerate_feasible(target, pts, 1.0, EnumerationBudget(6))
    assert res.verdict == INFEASIBLE
    assert res.witness is None


def test_enumerate_requires_covering_length():
    target = PolyCurve([(0, 0), (10, 0)])
    pts = [Point(i, 0) for i in range(5)]
    with pytest.raises(ValueError):
        enumerate_feasible(target, pts, 1.0, EnumerationBudget(3))


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumerationBudget(0)
    with pytest.raises(ValueError):
        EnumerationBudget(5, max_candidates=0)
    assert default_budget(5).max_vertices == 12


def test_budget_exhaustion_reported():
    target = PolyCurve([(0, 0), (10, 0)])
    # three live points plus one unreachable, so coverage can never complete
    pts = [Point(0.5, 0.3), Point(1.0, -0.3), Point(2.0, 0.3), Point(5, 5)]
    res = enumerate_feasible(target, pts, 1.0,
                             EnumerationBudget(8, max_candidates=3))
    assert res.verdict == EXHAUSTED
    assert res.candidates_examined > 3


def test_prune_on_off_agree_small():
    rng = np.random.default_rng(31)
    for _ in range(12):
        n_edges = int(rng.integers(1, 4))
        verts = rng.uniform(-3, 3, size=(n_edges + 1, 2))
        target = PolyCurve(verts)
        k = int(rng.integers(1, 4))
        pts = [Point(float(x), float(y))
               for x, y in verts[rng.integers(0, n_edges + 1, size=k)] +
               rng.normal(0, 0.7, size=(k, 2))]
        eps = float(rng.uniform(0.4, 1.4))
        L = min(6, 2 * k + 2)
        a = enumerate_feasible(target, pts, eps, EnumerationBudget(L, prune=True))
        b = enumerate_feasible(target, pts, eps, EnumerationBudget(L, prune=False))
        assert a.verdict == b.verdict


def test_deterministic():
    target = PolyCurve([(0, 0), (6, 0), (6, 6)])
    pts = [Point(0.5, 0.5), Point(5.5, -0.5), Point(6.5, 5.5)]
    r1 = enumerate_feasible(target, pts, 1.0, default_budget(3))
    r2 = enumerate_feasible(target, pts, 1.0, default_budget(3))
    assert r1 == r2


def test_unsat_gadget_is_infeasible():
    f = sat.CnfFormula(1, ((1,), (-1,)))
    inst = sat.reduce(f)
    L = 3 * f.num_clauses + 9
    res = enumerate_feasible(inst.curve, inst.points, 1.0, EnumerationBudget(L))
    assert res.verdict == INFEASIBLE


def test_survey_candidate_paths():
    t0 = time.perf_counter()
    rep = survey_candidate_paths()
    elapsed = time.perf_counter() - t0
    assert rep.config_count == 81
    assert rep.candidate_count == 81
    assert rep.pairs_checked == 81 * 81
    # frozen from engine evaluation: path A tracks every configuration, the
    # B side fails on the first square's entry edge, and no other candidate
    # path tracks any configuration
    assert rep.path_a_accepts == 81
    assert rep.path_b_accepts == 0
    assert rep.exclusivity_clean
    assert not rep.forbidden_failures
    assert "corner path A" in rep.summary()
    assert elapsed < 120
