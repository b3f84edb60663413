from fractions import Fraction

import pytest

from frechetcover import sat, schedules
from frechetcover.geometry import Point, PolyCurve, dist
from frechetcover.frechet import decide_frechet, min_frechet, verify_schedule


def F(n, d=1):
    return Fraction(n, d)


def test_parse_dimacs():
    f = sat.parse_dimacs("p cnf 1 1\n1 0\n")
    assert f.num_vars == 1 and f.clauses == ((1,),)
    f2 = sat.parse_dimacs("c comment\np cnf 2 2\n1 2 0\n-1 -2 0\n")
    assert f2.clauses == ((1, 2), (-1, -2))
    with pytest.raises(sat.DimacsError):
        sat.parse_dimacs("p cnf 4 1\n1 2 3 4 0\n")
    with pytest.raises(sat.DimacsError):
        sat.parse_dimacs("p cnf 2 1\n1 -1 0\n")  # complementary pair
    with pytest.raises(sat.DimacsError):
        sat.parse_dimacs("1 0\n")  # clause before problem line
    with pytest.raises(sat.DimacsError):
        sat.parse_dimacs("p cnf 1 1\n1\n")  # unterminated


def test_satisfying_assignment():
    f = sat.parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    a = sat.satisfying_assignment(f)
    assert a is not None and f.satisfied_by(a)
    unsat = sat.CnfFormula(1, ((1,), (-1,)))
    assert sat.satisfying_assignment(unsat) is None


def test_generator_fixed_coordinates():
    # formula-independent values, recomputed here in exact rational arithmetic
    co = sat.gadget_coords(2)
    assert co.g[0] == Point(1, 1)
    assert co.s[0] == Point(-1, -1)
    assert co.c[0] == Point(-1, 1)
    assert co.u == Point(-9, -1)
    assert co.w[0] == Point(float(F(1, 4)), float(F(-1, 4)))
    assert co.o[0] == Point(0, 0)
    assert co.z[0] == Point(-0.375, 0.375)
    # odd-branch next corner: s1 + (1/4 + 8, 7/4 + 15)
    g2 = (F(-1) + F(1, 4) + 8, F(-1) + F(7, 4) + 15)
    assert co.g[1] == Point(float(g2[0]), float(g2[1]))
    s2 = (g2[0] - 2, g2[1] - 2)
    alpha1 = (F(4, 5) * 1 + F(1, 5) * g2[0], F(4, 5) * 1 + F(1, 5) * g2[1])
    beta1 = (F(1, 5) * -1 + F(4, 5) * s2[0], F(1, 5) * -1 + F(4, 5) * s2[1])
    assert co.alpha[0] == Point(float(alpha1[0]), float(alpha1[1]))
    assert co.beta[0] == Point(float(beta1[0]), float(beta1[1]))
    assert co.alpha[0] == Point(2.25, 3.95)
    assert co.beta[0] == Point(4.0, 10.8)
    assert co.g[1] == Point(7.25, 15.75)


def test_generator_parity_branches_and_anchors():
    co = sat.gadget_coords(3)
    # even square: c at (x(g), y(s)), w offset up-left
    assert co.c[1] == Point(co.g[1].x, co.s[1].y)
    assert co.w[1] == Point(co.o[1].x - 0.25, co.o[1].y + 0.25)
    # odd k: eta and v stacked above the last square center
    assert co.eta == Point(co.o[2].x + 1, co.o[2].y + 4)
    assert co.v == Point(co.o[2].x + 1, co.o[2].y + 9)
    assert co.t == Point(co.v.x, co.u.y - 20)
    even = sat.gadget_coords(2)
    assert even.eta == Point(even.o[1].x + 4, even.o[1].y + 1)
    assert even.v == Point(even.o[1].x + 9, even.o[1].y + 1)


def test_reduce_instance_shape():
    f = sat.CnfFormula(2, ((1, -2), (2,)))
    inst = sat.reduce(f)
    assert len(inst.points) == 3 * 2 + 3
    assert len(inst.subcurves) == f.num_vars + 2
    assert inst.eps == 1.0
    # every subcurve runs u -> bend -> ... -> eta -> v
    for sc in inst.subcurves:
        assert sc.start == inst.coords.u and sc.end == inst.coords.v
        assert sc.vertices[1] == sat.ENTRY_BEND
        assert sc.vertices[-2] == inst.coords.eta
    # curve starts and ends at t, with a t between consecutive subcurves
    assert inst.curve.start == inst.coords.t and inst.curve.end == inst.coords.t
    n_t = sum(1 for p in inst.curve.vertices if p == inst.coords.t)
    assert n_t == len(inst.subcurves) + 1


def test_gadget_paths():
    f1 = sat.reduce(sat.CnfFormula(1, ((1,),)))
    a1, b1 = sat.gadget_paths(f1)
    co = f1.coords
    assert a1.vertices == (co.u, co.s[0], co.v)
    assert b1.vertices == (co.u, co.g[0], co.v)
    f4 = sat.reduce(sat.CnfFormula(4, ((1,), (1,), (1,), (1,))))
    a4, b4 = sat.gadget_paths(f4)
    co4 = f4.coords
    assert a4.vertices == (co4.u, co4.s[0], co4.g[1], co4.s[2], co4.g[3], co4.v)
    assert b4.vertices == (co4.u, co4.g[0], co4.s[1], co4.g[2], co4.s[3], co4.v)
    assert set(a4.vertices) & set(b4.vertices) == {co4.u, co4.v}


def test_membership_cases_build_expected_waypoints():
    co = sat.gadget_coords(2)
    pos = sat.subcurve_for_memberships(co, (1, 0))
    from frechetcover.geometry import Segment, midpoint
    assert pos.vertices[2] == midpoint(Segment(co.s[0], co.c[0]))
    assert pos.vertices[3] == co.c[0]
    assert pos.vertices[4] == co.w[0]
    neg = sat.subcurve_for_memberships(co, (-1, 0))
    assert neg.vertices[2] == co.w[0]
    assert neg.vertices[4] == midpoint(Segment(co.g[0], co.c[0]))
    none = sat.subcurve_for_memberships(co, (0, 0))
    assert none.vertices[2] == co.w[0] and none.vertices[4] == co.w[0]
    # even square flips the polarity branches
    pos_even = sat.subcurve_for_memberships(co, (0, 1))
    assert pos_even.vertices[7] == co.w[1]
    assert pos_even.vertices[9] == midpoint(Segment(co.g[1], co.c[1]))


def test_check_gadget_known_outcomes():
    """Audit outcomes frozen from direct engine evaluation.

    The corner-path closeness claims fail on the B side on every generated
    gadget (the first square's entry edge u->g1 passes 11/sqrt(104) ~ 1.0786
    from the mandatory waypoint w1); with an even square count the A side is
    clean.  All separation certificates hold.
    """
    inst = sat.reduce(sat.CnfFormula(2, ((1,), (-2,))))
    rep = sat.check_gadget(inst)
    by_name = {c.name: c for c in rep.checks}
    for i in (1, 2, 3, 4):
        assert by_name[f"subcurve{i}-within-1-of-A"].ok
        assert not by_name[f"subcurve{i}-within-1-of-B"].ok
    for c in rep.checks:
        if c.name.startswith(("forbidden", "separation", "corner-gap",
                              "no-detour", "blocking")):
            assert c.ok, c
    # the A-side detour at square 1 sits exactly on the bound
    assert by_name["detour-c1-var1-A"].ok
    # the B-side detour inherits the B defect
    assert not by_name["detour-c2-var2-B"].ok
    assert "total" in rep.summary()


def test_separation_values_exact():
    co = sat.gadget_coords(2)
    vals = dict(sat.separation_values(co))
    assert vals["dist(c1, s1g1)"] == pytest.approx(2 ** 0.5)
    assert vals["dist(w1, s1c1)"] == pytest.approx(1.25)
    assert vals["dist(w1, g1c1)"] == pytest.approx(1.25)
    # exact: 17 / sqrt(2053/8) = 34*sqrt(2) / sqrt(2053)
    expect = 34 * 2 ** 0.5 / 2053 ** 0.5
    assert vals["dist(alpha1, s1s2)"] == pytest.approx(expect, abs=1e-12)
    assert vals["dist(beta1, g1g2)"] == pytest.approx(expect, abs=1e-12)
    assert vals["dist(bend, u-c1)"] == pytest.approx(10 / 68 ** 0.5)
    assert all(v > 1 for v in vals.values())


def test_corner_gap_is_two_everywhere():
    co = sat.gadget_coords(5)
    for j in range(5):
        assert dist(co.c[j], co.a(j)) == pytest.approx(2.0)
        assert dist(co.c[j], co.b(j)) == pytest.approx(2.0)


def test_build_witness_structure():
    f = sat.CnfFormula(1, ((1,),))
    inst = sat.reduce(f)
    co = inst.coords
    q_true = sat.build_witness(f, [True])
    # variable pass on A detours to c1, plus the two closing passes
    assert q_true.start == co.t and q_true.end == co.t
    assert co.c[0] in q_true.vertices
    idx = q_true.vertices.index(co.c[0])
    assert q_true.vertices[idx - 1] == co.s[0] and q_true.vertices[idx + 1] == co.s[0]
    q_false = sat.build_witness(f, [False])
    assert co.c[0] not in q_false.vertices
    # falsifying assignment misses c1 entirely: coverage fails
    assert not sat.verify_witness(inst, q_false)
    with pytest.raises(ValueError):
        sat.build_witness(f, [])


def test_verify_witness_requires_known_vertices():
    f = sat.CnfFormula(1, ((1,),))
    inst = sat.reduce(f)
    alien = PolyCurve([inst.coords.t, Point(100, 100), inst.coords.t])
    assert not sat.verify_witness(inst, alien)


def test_verify_witness_rejects_all_assignment_tours():
    """Frozen from engine evaluation: the mandatory B pass exceeds distance 1
    (the square-1 entry defect), so even satisfying assignments fail."""
    f = sat.CnfFormula(1, ((1,),))
    inst = sat.reduce(f)
    q = sat.build_witness(f, [True])
    # coverage holds ...
    names = set(inst.points)
    assert names.issubset(set(q.vertices))
    # ... but the distance check fails
    assert not sat.verify_witness(inst, q)
    assert not decide_frechet(inst.curve, q, 1.0)


def test_entry_schedules_known_outcomes():
    co = sat.gadget_coords(4)
    for label, sched in schedules.all_entry_schedules(co):
        ok = verify_schedule([(p.tour, p.subcurve) for p in sched], 1.0)
        if label.startswith("A"):
            assert ok, label
        else:
            assert not ok, label  # B-side entry rows carry the defect
    # the failing B rows are exactly the known ones
    bad = [p.label for p in schedules.entry_schedule_b(co, 1)
           if p.distance > 1 + 1e-9]
    assert bad == ["B-entry foot vs w1 (pos)"]


def test_interior_schedules_all_pass():
    co = sat.gadget_coords(6)
    for label, sched in schedules.all_interior_schedules(co, 3):
        assert verify_schedule([(p.tour, p.subcurve) for p in sched], 1.0), label


def test_schedule_carry_and_free_stations():
    co = sat.gadget_coords(4)
    sched = schedules.entry_schedule_a(co, 1)
    # the free station near the bend lies on the first tour edge
    bend_row = sched[1]
    assert bend_row.subcurve == sat.ENTRY_BEND
    assert bend_row.distance <= 1 + 1e-9
