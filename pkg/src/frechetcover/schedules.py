"""Pairwise walk schedules certifying the corner paths against subcurves.

A schedule lists station pairs (tour-object location, subcurve-object
location) whose pointwise distances bound the leash needed for the two
objects to advance in lockstep.  The entry schedules cover the walk from u
to the first corner; the interior schedules cover one odd-numbered square
and the two squares after it.  Free stations of the form "any point within
distance 1 of P" are realized as the closest point to P on the tour edge
being walked; named stations are computed exactly from the generated
coordinates.

Schedules are data for the verification suite: instantiate on a gadget's
coordinates and feed the pairs to frechet.verify_schedule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .geometry import (GeometryError, Point, Segment, dist, midpoint,
                       perpendicular_foot, point_segment_distance,
                       segment_intersection)
from .sat import ENTRY_BEND, GadgetCoords


class ScheduleError(ValueError):
    """A station failed to instantiate on the given coordinates."""


@dataclass(frozen=True)
class SchedulePair:
    label: str
    tour: Point
    subcurve: Point

    @property
    def distance(self) -> float:
        return dist(self.tour, self.subcurve)


def _isect(a: Point, b: Point, c: Point, d: Point, label: str) -> Point:
    try:
        p = segment_intersection(Segment(a, b), Segment(c, d))
    except GeometryError as exc:
        raise ScheduleError(f"{label}: {exc}") from exc
    if p is None:
        raise ScheduleError(f"{label}: segments do not cross")
    return p


def _foot(p: Point, a: Point, b: Point, label: str) -> Point:
    f = perpendicular_foot(p, Segment(a, b))
    if f is None:
        raise ScheduleError(f"{label}: perpendicular foot off the segment")
    return f


def _near(p: Point, a: Point, b: Point) -> Point:
    seg = Segment(a, b)
    f = perpendicular_foot(p, seg) if not seg.is_degenerate() else None
    if f is not None:
        return f
    return a if dist(p, a) <= dist(p, b) else b


def _pairs(rows: Sequence[Tuple[Optional[Point], Point, str]]) -> List[SchedulePair]:
    out: List[SchedulePair] = []
    cur: Optional[Point] = None
    for tour, sub, label in rows:
        if tour is not None:
            cur = tour
        if cur is None:
            raise ScheduleError(f"{label}: no tour station to carry")
        out.append(SchedulePair(label, cur, sub))
    return out


def entry_schedule_a(co: GadgetCoords, m: int) -> List[SchedulePair]:
    """Stations from u to the first corner of path A, by square-1 membership."""
    s1, c1, w1 = co.s[0], co.c[0], co.w[0]
    u = co.u
    rows: List[Tuple[Optional[Point], Point, str]] = [
        (u, u, "A-entry start"),
        (_near(ENTRY_BEND, u, s1), ENTRY_BEND, "A-entry bend"),
    ]
    if m > 0:
        rows.append((s1, midpoint(Segment(s1, c1)), "A-entry arrive s1 (pos)"))
    else:
        rows.append((s1, _isect(ENTRY_BEND, w1, s1, c1, "A-entry crossing"),
                     "A-entry arrive s1"))
    return _pairs(rows)


def entry_schedule_b(co: GadgetCoords, m: int) -> List[SchedulePair]:
    """Stations from u to the first corner of path B, by square-1 membership."""
    s1, g1, c1, w1 = co.s[0], co.g[0], co.c[0], co.w[0]
    u = co.u
    a1 = co.alpha[0] if co.alpha else co.eta
    rows: List[Tuple[Optional[Point], Point, str]] = [
        (u, u, "B-entry start"),
        (_near(ENTRY_BEND, u, g1), ENTRY_BEND, "B-entry bend"),
    ]
    if m > 0:
        x = _isect(u, g1, s1, c1, "B-entry wall crossing")
        rows += [
            (x, midpoint(Segment(s1, c1)), "B-entry wall vs midpoint (pos)"),
            (None, c1, "B-entry wall vs c1 (pos)"),
        ]
        both = _isect(u, g1, c1, w1, "B-entry shared crossing")
        rows += [
            (both, both, "B-entry shared crossing (pos)"),
            (_foot(w1, u, g1, "B-entry foot"), w1, "B-entry foot vs w1 (pos)"),
            (g1, _isect(w1, a1, c1, g1, "B-entry exit crossing"),
             "B-entry arrive g1 (pos)"),
        ]
    else:
        x = _isect(u, g1, s1, c1, "B-entry wall crossing")
        rows.append((x, _isect(ENTRY_BEND, w1, s1, c1, "B-entry sub crossing"),
                     "B-entry wall crossings"))
        cw = _isect(u, g1, c1, w1, "B-entry cw crossing")
        rows += [
            (cw, w1, "B-entry cw vs w1"),
            (None, c1, "B-entry cw vs c1"),
        ]
        if m == 0:
            rows.append((None, w1, "B-entry cw vs w1 again"))
            rows.append((g1, _isect(w1, a1, c1, g1, "B-entry exit crossing"),
                         "B-entry arrive g1"))
        else:
            rows.append((g1, midpoint(Segment(c1, g1)), "B-entry arrive g1 (neg)"))
    return _pairs(rows)


def _square_points(co: GadgetCoords, j: int):
    return co.s[j], co.g[j], co.c[j], co.w[j], co.z[j]


def interior_schedule_a(co: GadgetCoords, stage: int,
                        ms: Sequence[int]) -> List[SchedulePair]:
    """Stations walking path A across squares stage, stage+1, stage+2.

    stage is 1-based and must be odd with stage >= 3 (a previous connector
    exists) and stage+2 <= k; ms gives the three squares' memberships.
    """
    j = stage - 1
    if stage % 2 == 0 or j < 1 or j + 2 >= co.k:
        raise ValueError("stage must be odd, with a square before and two after")
    s_j, g_j, c_j, w_j, z_j = _square_points(co, j)
    s_1, g_1, c_1, w_1, z_1 = _square_points(co, j + 1)
    s_2, g_2, c_2, w_2, z_2 = _square_points(co, j + 2)
    al_j, be_j = co.alpha[j], co.beta[j]
    al_1, be_1 = co.alpha[j + 1], co.beta[j + 1]
    be_prev = co.beta[j - 1]
    gn = co.g[j + 1]

    rows: List[Tuple[Optional[Point], Point, str]] = []
    m = ms[0]
    if m > 0:
        rows += [
            (s_j, midpoint(Segment(c_j, s_j)), f"A{stage} s vs mid(cs)"),
            (z_j, c_j, f"A{stage} z vs c"),
            (None, w_j, f"A{stage} z vs w"),
            (_isect(c_j, g_j, s_j, gn, f"A{stage} exit"),
             _isect(w_j, al_j, c_j, g_j, f"A{stage} sub exit"),
             f"A{stage} exit crossings"),
        ]
    else:
        rows += [
            (s_j, _isect(be_prev, w_j, c_j, s_j, f"A{stage} entry"),
             f"A{stage} s vs entry crossing"),
            (_foot(w_j, s_j, gn, f"A{stage} foot"), w_j, f"A{stage} foot vs w"),
            (z_j, z_j, f"A{stage} z vs z"),
            (None, c_j, f"A{stage} z vs c"),
        ]
        if m == 0:
            rows.append((None, w_j, f"A{stage} z vs w again"))
            rows.append((_isect(c_j, g_j, s_j, gn, f"A{stage} exit"),
                         _isect(w_j, al_j, c_j, g_j, f"A{stage} sub exit"),
                         f"A{stage} exit crossings"))
        else:
            rows.append((_isect(c_j, g_j, s_j, gn, f"A{stage} exit"),
                         midpoint(Segment(c_j, g_j)), f"A{stage} exit vs mid"))

    rows += [
        (_near(al_j, s_j, gn), al_j, f"A{stage} connector alpha"),
        (_near(be_j, s_j, gn), be_j, f"A{stage} connector beta"),
    ]

    m = ms[1]
    enter = _isect(s_1, c_1, s_j, gn, f"A{stage + 1} entry")
    if m > 0:
        rows += [
            (enter, _isect(be_j, w_1, c_1, s_1, f"A{stage + 1} sub entry"),
             f"A{stage + 1} entry crossings"),
            (z_1, w_1, f"A{stage + 1} z vs w"),
            (None, z_1, f"A{stage + 1} z vs z"),
            (None, c_1, f"A{stage + 1} z vs c"),
            (g_1, midpoint(Segment(c_1, g_1)), f"A{stage + 1} arrive g"),
        ]
    elif m < 0:
        rows += [
            (enter, midpoint(Segment(s_1, c_1)), f"A{stage + 1} entry vs mid"),
            (z_1, c_1, f"A{stage + 1} z vs c"),
            (None, w_1, f"A{stage + 1} z vs w"),
            (g_1, _isect(g_1, c_1, w_1, al_1, f"A{stage + 1} sub exit"),
             f"A{stage + 1} arrive g"),
        ]
    else:
        rows += [
            (enter, _isect(be_j, w_1, c_1, s_1, f"A{stage + 1} sub entry"),
             f"A{stage + 1} entry crossings"),
            (z_1, w_1, f"A{stage + 1} z vs w"),
            (None, c_1, f"A{stage + 1} z vs c"),
            (None, w_1, f"A{stage + 1} z vs w again"),
            (g_1, _isect(g_1, c_1, w_1, al_1, f"A{stage + 1} sub exit"),
             f"A{stage + 1} arrive g"),
        ]

    rows += [
        (_near(al_1, g_1, s_2), al_1, f"A{stage + 1} connector alpha"),
        (_near(be_1, g_1, s_2), be_1, f"A{stage + 1} connector beta"),
    ]

    m = ms[2]
    if m > 0:
        rows.append((s_2, midpoint(Segment(c_2, s_2)), f"A{stage + 2} arrive s (pos)"))
    else:
        rows.append((s_2, _isect(al_1, w_2, c_2, s_2, f"A{stage + 2} entry"),
                     f"A{stage + 2} arrive s"))
    return _pairs(rows)


def interior_schedule_b(co: GadgetCoords, stage: int,
                        ms: Sequence[int]) -> List[SchedulePair]:
    """Stations walking path B across squares stage, stage+1, stage+2."""
    j = stage - 1
    if stage % 2 == 0 or j < 1 or j + 2 >= co.k:
        raise ValueError("stage must be odd, with a square before and two after")
    s_j, g_j, c_j, w_j, z_j = _square_points(co, j)
    s_1, g_1, c_1, w_1, z_1 = _square_points(co, j + 1)
    s_2, g_2, c_2, w_2, z_2 = _square_points(co, j + 2)
    al_prev = co.alpha[j - 1]
    al_j, be_j = co.alpha[j], co.beta[j]
    al_1, be_1 = co.alpha[j + 1], co.beta[j + 1]
    al_2 = co.alpha[j + 2] if j + 2 < len(co.alpha) else None
    gn = co.g[j + 2]

    rows: List[Tuple[Optional[Point], Point, str]] = []
    m = ms[0]
    # at an odd square the subcurve crosses the top side on its exit edge
    # w_j -> alpha_j; that crossing is the station paired with the arrival
    # at g_j (same station as in the entry schedule)
    if m > 0:
        rows.append((g_j, _isect(w_j, al_j, c_j, g_j, f"B{stage} exit"),
                     f"B{stage} g vs exit crossing (pos)"))
    elif m < 0:
        rows.append((g_j, midpoint(Segment(c_j, g_j)), f"B{stage} g vs mid"))
    else:
        rows.append((g_j, _isect(w_j, al_j, c_j, g_j, f"B{stage} exit"),
                     f"B{stage} g vs exit crossing"))

    rows += [
        (_near(al_j, g_j, s_1), al_j, f"B{stage} connector alpha"),
        (_near(be_j, g_j, s_1), be_j, f"B{stage} connector beta"),
    ]

    m = ms[1]
    if m > 0:
        rows += [
            (s_1, _isect(be_j, w_1, c_1, s_1, f"B{stage + 1} sub entry"),
             f"B{stage + 1} arrive s (pos)"),
            (_foot(w_1, s_1, gn, f"B{stage + 1} foot"), w_1,
             f"B{stage + 1} foot vs w"),
            (z_1, z_1, f"B{stage + 1} z vs z"),
            (_isect(g_1, c_1, s_1, gn, f"B{stage + 1} exit"), c_1,
             f"B{stage + 1} exit vs c"),
            (None, midpoint(Segment(c_1, g_1)), f"B{stage + 1} exit vs mid"),
        ]
    elif m < 0:
        rows += [
            (s_1, midpoint(Segment(s_1, c_1)), f"B{stage + 1} arrive s (neg)"),
            (z_1, c_1, f"B{stage + 1} z vs c"),
            (None, w_1, f"B{stage + 1} z vs w"),
            (_isect(g_1, c_1, s_1, gn, f"B{stage + 1} exit"),
             _isect(g_1, c_1, w_1, al_1, f"B{stage + 1} sub exit"),
             f"B{stage + 1} exit crossings"),
        ]
    else:
        rows += [
            (s_1, _isect(be_j, w_1, c_1, s_1, f"B{stage + 1} sub entry"),
             f"B{stage + 1} arrive s"),
            (z_1, w_1, f"B{stage + 1} z vs w"),
            (None, c_1, f"B{stage + 1} z vs c"),
            (None, w_1, f"B{stage + 1} z vs w again"),
            (_isect(g_1, c_1, s_1, gn, f"B{stage + 1} exit"),
             _isect(g_1, c_1, w_1, al_1, f"B{stage + 1} sub exit"),
             f"B{stage + 1} exit crossings"),
        ]

    rows += [
        (_near(al_1, s_1, gn), al_1, f"B{stage + 1} connector alpha"),
        (_near(be_1, s_1, gn), be_1, f"B{stage + 1} connector beta"),
    ]

    m = ms[2]
    enter = _isect(s_2, c_2, s_1, gn, f"B{stage + 2} entry")
    if m > 0:
        rows += [
            (enter, midpoint(Segment(s_2, c_2)), f"B{stage + 2} entry vs mid"),
            (z_2, c_2, f"B{stage + 2} z vs c"),
            (None, w_2, f"B{stage + 2} z vs w"),
        ]
        if al_2 is None:
            raise ScheduleError("exit connector beyond the last square")
        rows.append((g_2, _isect(g_2, c_2, w_2, al_2, f"B{stage + 2} sub exit"),
                     f"B{stage + 2} arrive g"))
    elif m < 0:
        rows += [
            (enter, _isect(s_2, c_2, be_1, w_2, f"B{stage + 2} sub entry"),
             f"B{stage + 2} entry crossings"),
            (z_2, w_2, f"B{stage + 2} z vs w"),
            (None, c_2, f"B{stage + 2} z vs c"),
            (g_2, midpoint(Segment(c_2, g_2)), f"B{stage + 2} arrive g"),
        ]
    else:
        rows += [
            (enter, _isect(s_2, c_2, be_1, w_2, f"B{stage + 2} sub entry"),
             f"B{stage + 2} entry crossings"),
            (z_2, w_2, f"B{stage + 2} z vs w"),
            (None, c_2, f"B{stage + 2} z vs c"),
            (None, w_2, f"B{stage + 2} z vs w again"),
        ]
        if al_2 is None:
            raise ScheduleError("exit connector beyond the last square")
        rows.append((g_2, _isect(g_2, c_2, w_2, al_2, f"B{stage + 2} sub exit"),
                     f"B{stage + 2} arrive g"))
    return _pairs(rows)


def all_entry_schedules(co: GadgetCoords):
    """Every entry schedule, labeled, for both corner paths."""
    out = []
    for m in (1, -1, 0):
        out.append((f"A-entry m={m:+d}", entry_schedule_a(co, m)))
        out.append((f"B-entry m={m:+d}", entry_schedule_b(co, m)))
    return out


def all_interior_schedules(co: GadgetCoords, stage: int):
    """Every interior schedule at the given odd stage, for both paths."""
    out = []
    for m0 in (1, -1, 0):
        for m1 in (1, -1, 0):
            for m2 in (1, -1, 0):
                ms = (m0, m1, m2)
                out.append((f"A{stage} ms={ms}", interior_schedule_a(co, stage, ms)))
                out.append((f"B{stage} ms={ms}", interior_schedule_b(co, stage, ms)))
    return out
