"""3CNF-to-instance generator, tour builder for assignments, and geometry audits.

A formula with k clauses becomes a point set of 3k+3 points and a long
target curve: one subcurve per variable (plus two closing subcurves), each
running from a common start u to a common end v through k "clause squares".
Within square j the subcurve's waypoints depend on whether the variable
occurs positively, negatively, or not at all in clause j.  A tour tracking a
subcurve within distance 1 is meant to commit to one of two corner paths
through the squares, and can detour to the clause point c_j exactly when the
corresponding literal appears; the audit in check_gadget evaluates every
separation and closeness claim behind that design on the generated
coordinates.

Coordinates are generated in exact rational arithmetic (the construction
uses halves, quarters, and fifths) and emitted as floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geometry import (Point, PolyCurve, Segment, dist, midpoint,
                       point_segment_distance)
from .frechet import decide_frechet, decide_frechet_subcurve

EPS = 1.0  # every generated instance decides at distance 1

FPoint = Tuple[Fraction, Fraction]


class DimacsError(ValueError):
    """Malformed DIMACS CNF input."""


@dataclass(frozen=True)
class CnfFormula:
    """CNF with at most three literals per clause.

    Clauses are tuples of nonzero ints: +v for x_v, -v for ¬x_v (1-based).
    Clauses containing a variable in both polarities are rejected: they are
    always true and the square geometry assumes one polarity per clause.
    """

    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        if not self.clauses:
            raise ValueError("formula needs at least one clause")
        for cl in self.clauses:
            if not 1 <= len(cl) <= 3:
                raise ValueError(f"clause size {len(cl)} outside 1..3")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
            if any(-lit in cl for lit in cl):
                raise ValueError(f"clause {cl} contains complementary literals")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def membership(self, var: int, clause: int) -> int:
        """+1 / -1 / 0 for var occurring positively / negatively / not at all."""
        cl = self.clauses[clause]
        if var in cl:
            return 1
        if -var in cl:
            return -1
        return 0

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in cl)
                   for cl in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: bad problem line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: bad problem counts") from None
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if len(current) > 3:
                    raise DimacsError(
                        f"line {lineno}: clause has {len(current)} literals (max 3)")
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        raise DimacsError("unterminated clause at end of input")
    if num_vars is None:
        raise DimacsError("missing problem line")
    if num_clauses is not None and num_clauses != len(clauses):
        raise DimacsError(
            f"problem line declares {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, tuple(clauses))
    except ValueError as exc:
        raise DimacsError(str(exc)) from None


def satisfying_assignment(formula: CnfFormula) -> Optional[Tuple[bool, ...]]:
    """Truth-table search; guarded to small variable counts."""
    n = formula.num_vars
    if n > 20:
        raise ValueError("truth-table search is capped at 20 variables")
    for bits in range(1 << n):
        a = tuple(bool(bits >> i & 1) for i in range(n))
        if formula.satisfied_by(a):
            return a
    return None


# --- coordinate generation -------------------------------------------------

def _fp(x, y) -> FPoint:
    return (Fraction(x), Fraction(y))


def _mid(a: FPoint, b: FPoint) -> FPoint:
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def _pt(p: FPoint) -> Point:
    return Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class GadgetCoords:
    """Named coordinates of a k-square gadget, emitted as floats.

    Indexable by square: s[j], g[j], c[j], w[j], z[j], o[j] for j in 0..k-1,
    connector points alpha[j], beta[j] for j in 0..k-2, and the anchors
    u, v, eta, t.  g has one extra trailing entry (the generator computes the
    next square's corner before stopping).
    """

    k: int
    s: Tuple[Point, ...]
    g: Tuple[Point, ...]
    c: Tuple[Point, ...]
    w: Tuple[Point, ...]
    z: Tuple[Point, ...]
    o: Tuple[Point, ...]
    alpha: Tuple[Point, ...]
    beta: Tuple[Point, ...]
    eta: Point
    u: Point
    v: Point
    t: Point

    def a(self, j: int) -> Point:
        """Corner path A's point at square j (0-based)."""
        return self.s[j] if j % 2 == 0 else self.g[j]

    def b(self, j: int) -> Point:
        """Corner path B's point at square j (0-based)."""
        return self.g[j] if j % 2 == 0 else self.s[j]


def gadget_coords(k: int) -> GadgetCoords:
    """Exact coordinates for a k-square gadget (independent of the formula)."""
    if k < 1:
        raise ValueError("need at least one clause square")
    g: List[FPoint] = [_fp(1, 1)]
    s: List[FPoint] = []
    c: List[FPoint] = []
    w: List[FPoint] = []
    z: List[FPoint] = []
    o: List[FPoint] = []
    q = Fraction(1, 4)
    for idx in range(k):  # idx = j-1 in 1-based square numbering
        gj = g[idx]
        sj = (gj[0] - 2, gj[1] - 2)
        s.append(sj)
        oj = _mid(sj, gj)
        o.append(oj)
        odd = idx % 2 == 0  # squares are numbered from 1
        if odd:
            cj = (sj[0], gj[1])
            wj = (oj[0] + q, oj[1] - q)
            g.append((sj[0] + q + 8, sj[1] + 7 * q + 15))
        else:
            cj = (gj[0], sj[1])
            wj = (oj[0] - q, oj[1] + q)
            g.append((sj[0] + 7 * q + 15, sj[1] + q + 8))
        c.append(cj)
        w.append(wj)
        z.append(_mid(cj, wj))
    alpha: List[FPoint] = []
    beta: List[FPoint] = []
    for j in range(k - 1):
        alpha.append((Fraction(4, 5) * g[j][0] + Fraction(1, 5) * g[j + 1][0],
                      Fraction(4, 5) * g[j][1] + Fraction(1, 5) * g[j + 1][1]))
        s_next = (g[j + 1][0] - 2, g[j + 1][1] - 2)
        beta.append((Fraction(1, 5) * s[j][0] + Fraction(4, 5) * s_next[0],
                     Fraction(1, 5) * s[j][1] + Fraction(4, 5) * s_next[1]))
    ok = o[-1]
    if k % 2 == 1:
        eta = (ok[0] + 1, ok[1] + 4)
        v = (ok[0] + 1, ok[1] + 9)
    else:
        eta = (ok[0] + 4, ok[1] + 1)
        v = (ok[0] + 9, ok[1] + 1)
    u = _fp(-9, -1)
    t = (v[0], u[1] - 20)
    return GadgetCoords(
        k=k,
        s=tuple(map(_pt, s)), g=tuple(map(_pt, g)), c=tuple(map(_pt, c)),
        w=tuple(map(_pt, w)), z=tuple(map(_pt, z)), o=tuple(map(_pt, o)),
        alpha=tuple(map(_pt, alpha)), beta=tuple(map(_pt, beta)),
        eta=_pt(eta), u=_pt(u), v=_pt(v), t=_pt(t))


ENTRY_BEND = Point(-4.0, -1.0)  # fixed second vertex of every subcurve


def subcurve_for_memberships(coords: GadgetCoords,
                             memberships: Sequence[int]) -> PolyCurve:
    """The u->v subcurve for one per-square membership vector (+1/-1/0)."""
    if len(memberships) != coords.k:
        raise ValueError("one membership entry per square required")
    pts: List[Point] = [coords.u, ENTRY_BEND]
    for j, m in enumerate(memberships):
        odd = j % 2 == 0
        if (m > 0 and odd) or (m < 0 and not odd):
            pts += [midpoint(Segment(coords.s[j], coords.c[j])), coords.c[j],
                    coords.w[j]]
        elif (m < 0 and odd) or (m > 0 and not odd):
            pts += [coords.w[j], coords.c[j],
                    midpoint(Segment(coords.g[j], coords.c[j]))]
        else:
            pts += [coords.w[j], coords.c[j], coords.w[j]]
        if j != coords.k - 1:
            pts += [coords.alpha[j], coords.beta[j]]
    pts += [coords.eta, coords.v]
    return PolyCurve(pts)


def all_membership_configs(k: int) -> List[Tuple[int, ...]]:
    """All 3^k membership vectors, in deterministic order."""
    configs: List[Tuple[int, ...]] = [()]
    for _ in range(k):
        configs = [c + (m,) for c in configs for m in (1, -1, 0)]
    return configs


def corner_paths(coords: GadgetCoords) -> Tuple[PolyCurve, PolyCurve]:
    """The two intended tours: A through a-corners, B through b-corners."""
    a = [coords.u] + [coords.a(j) for j in range(coords.k)] + [coords.v]
    b = [coords.u] + [coords.b(j) for j in range(coords.k)] + [coords.v]
    return PolyCurve(a), PolyCurve(b)


@dataclass(frozen=True)
class GadgetInstance:
    formula: CnfFormula
    coords: GadgetCoords
    points: Tuple[Point, ...]  # s1,g1,c1, s2,g2,c2, ..., u, v, t
    curve: PolyCurve
    subcurves: Tuple[PolyCurve, ...]  # one per variable, plus two closers
    eps: float = EPS

    def point_names(self) -> Dict[str, Point]:
        names = {}
        for j in range(self.coords.k):
            names[f"s{j + 1}"] = self.coords.s[j]
            names[f"g{j + 1}"] = self.coords.g[j]
            names[f"c{j + 1}"] = self.coords.c[j]
        names["u"] = self.coords.u
        names["v"] = self.coords.v
        names["t"] = self.coords.t
        return names


def reduce(formula: CnfFormula) -> GadgetInstance:
    """Generate the point set, target curve, and eps=1 for a formula."""
    k = formula.num_clauses
    coords = gadget_coords(k)
    points: List[Point] = []
    for j in range(k):
        points += [coords.s[j], coords.g[j], coords.c[j]]
    points += [coords.u, coords.v, coords.t]

    subcurves: List[PolyCurve] = []
    for i in range(1, formula.num_vars + 3):
        if i <= formula.num_vars:
            ms = tuple(formula.membership(i, j) for j in range(k))
        else:
            ms = (0,) * k  # the two closing subcurves carry no literals
        subcurves.append(subcurve_for_memberships(coords, ms))

    curve_pts: List[Point] = [coords.t]
    for sc in subcurves:
        curve_pts.extend(sc.vertices)
        curve_pts.append(coords.t)
    return GadgetInstance(formula, coords, tuple(points), PolyCurve(curve_pts),
                          tuple(subcurves))


def gadget_paths(inst: GadgetInstance) -> Tuple[PolyCurve, PolyCurve]:
    return corner_paths(inst.coords)


# --- assignment-driven tour ------------------------------------------------

def _detoured_path(coords: GadgetCoords, use_a: bool,
                   detour_squares: Iterable[int]) -> List[Point]:
    corner = coords.a if use_a else coords.b
    pts: List[Point] = [coords.u]
    detours = set(detour_squares)
    for j in range(coords.k):
        pts.append(corner(j))
        if j in detours:
            pts.append(coords.c[j])
            pts.append(corner(j))
    pts.append(coords.v)
    return pts


def build_witness(formula: CnfFormula, assignment: Sequence[bool]) -> PolyCurve:
    """Tour for a truth assignment: per variable, corner path A when true
    (detouring to c_j at every clause holding the positive literal) or B when
    false (detouring at negative occurrences), plus the two closing passes."""
    if len(assignment) != formula.num_vars:
        raise ValueError("assignment must cover every variable")
    coords = gadget_coords(formula.num_clauses)
    k = formula.num_clauses
    pts: List[Point] = [coords.t]
    for i in range(1, formula.num_vars + 1):
        value = assignment[i - 1]
        want = 1 if value else -1
        detours = [j for j in range(k) if formula.membership(i, j) == want]
        pts.extend(_detoured_path(coords, value, detours))
        pts.append(coords.t)
    pts.extend(_detoured_path(coords, True, []))
    pts.append(coords.t)
    pts.extend(_detoured_path(coords, False, []))
    pts.append(coords.t)
    return PolyCurve(pts)


def verify_witness(inst: GadgetInstance, q: PolyCurve) -> bool:
    """All vertices from the point set, full coverage, within distance 1."""
    from .oracle import is_feasible
    return is_feasible(q, inst.curve, inst.points, inst.eps)


# --- geometry audit ---------------------------------------------------------

@dataclass(frozen=True)
class GadgetCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class GadgetReport:
    checks: Tuple[GadgetCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[GadgetCheck]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
                 + (f"  ({c.detail})" if c.detail else "")
                 for c in self.checks]
        lines.append(f"total {len(self.checks)}, "
                     f"failed {sum(not c.ok for c in self.checks)}")
        return "\n".join(lines)


def forbidden_hops(coords: GadgetCoords) -> List[Tuple[str, PolyCurve]]:
    """Hops between off-path points that must exceed distance 1 to every
    subcurve; each is certified by a separation from a subcurve vertex."""
    k = coords.k
    hops: List[Tuple[str, PolyCurve]] = []
    for j in range(k):
        tag = f"{j + 1}"
        hops.append((f"s{tag}-g{tag}", PolyCurve([coords.s[j], coords.g[j]])))
        hops.append((f"s{tag}-c{tag}-g{tag}",
                     PolyCurve([coords.s[j], coords.c[j], coords.g[j]])))
        hops.append((f"g{tag}-c{tag}-s{tag}",
                     PolyCurve([coords.g[j], coords.c[j], coords.s[j]])))
        if j + 1 < k:
            nxt = f"{j + 2}"
            hops.append((f"s{tag}-s{nxt}", PolyCurve([coords.s[j], coords.s[j + 1]])))
            hops.append((f"g{tag}-g{nxt}", PolyCurve([coords.g[j], coords.g[j + 1]])))
            hops.append((f"c{tag}-c{nxt}", PolyCurve([coords.c[j], coords.c[j + 1]])))
            hops.append((f"c{tag}-g{nxt}", PolyCurve([coords.c[j], coords.g[j + 1]])))
            hops.append((f"c{tag}-s{nxt}", PolyCurve([coords.c[j], coords.s[j + 1]])))
    hops.append(("u-c1", PolyCurve([coords.u, coords.c[0]])))
    hops.append((f"c{k}-v", PolyCurve([coords.c[k - 1], coords.v])))
    return hops


def separation_values(coords: GadgetCoords) -> List[Tuple[str, float]]:
    """The separation distances certifying each forbidden hop (all must > 1)."""
    k = coords.k
    vals: List[Tuple[str, float]] = []
    for j in range(k):
        tag = f"{j + 1}"
        vals.append((f"dist(c{tag}, s{tag}g{tag})",
                     point_segment_distance(coords.c[j], Segment(coords.s[j], coords.g[j]))))
        vals.append((f"dist(w{tag}, s{tag}c{tag})",
                     point_segment_distance(coords.w[j], Segment(coords.s[j], coords.c[j]))))
        vals.append((f"dist(w{tag}, g{tag}c{tag})",
                     point_segment_distance(coords.w[j], Segment(coords.g[j], coords.c[j]))))
        if j + 1 < k:
            nxt = f"{j + 2}"
            vals.append((f"dist(alpha{tag}, s{tag}s{nxt})",
                         point_segment_distance(coords.alpha[j], Segment(coords.s[j], coords.s[j + 1]))))
            vals.append((f"dist(beta{tag}, g{tag}g{nxt})",
                         point_segment_distance(coords.beta[j], Segment(coords.g[j], coords.g[j + 1]))))
            vals.append((f"dist(alpha{tag}, c{tag}c{nxt})",
                         point_segment_distance(coords.alpha[j], Segment(coords.c[j], coords.c[j + 1]))))
            vals.append((f"dist(alpha{tag}, c{tag}g{nxt})",
                         point_segment_distance(coords.alpha[j], Segment(coords.c[j], coords.g[j + 1]))))
            vals.append((f"dist(alpha{tag}, c{tag}s{nxt})",
                         point_segment_distance(coords.alpha[j], Segment(coords.c[j], coords.s[j + 1]))))
    vals.append(("dist(bend, u-c1)",
                 point_segment_distance(ENTRY_BEND, Segment(coords.u, coords.c[0]))))
    vals.append((f"dist(eta, c{k}-v)",
                 point_segment_distance(coords.eta, Segment(coords.c[k - 1], coords.v))))
    return vals


def check_gadget(inst: GadgetInstance) -> GadgetReport:
    """Audit every closeness and separation claim on a generated instance."""
    coords = inst.coords
    k = coords.k
    path_a, path_b = corner_paths(coords)
    checks: List[GadgetCheck] = []

    for i, sc in enumerate(inst.subcurves, start=1):
        checks.append(GadgetCheck(
            f"subcurve{i}-within-1-of-A",
            decide_frechet(sc, path_a, EPS)))
        checks.append(GadgetCheck(
            f"subcurve{i}-within-1-of-B",
            decide_frechet(sc, path_b, EPS)))

    # corner-to-clause detours where the matching literal occurs
    n = inst.formula.num_vars
    for i in range(1, n + 1):
        for j in range(k):
            m = inst.formula.membership(i, j)
            if m == 0:
                continue
            use_a = m > 0
            detour = PolyCurve(_detoured_path(coords, use_a, [j]))
            corner = coords.a(j) if use_a else coords.b(j)
            checks.append(GadgetCheck(
                f"detour-c{j + 1}-var{i}-{'A' if use_a else 'B'}",
                decide_frechet(inst.subcurves[i - 1], detour, EPS),
                f"corner-to-clause distance {dist(corner, coords.c[j]):.6g}"))
            checks.append(GadgetCheck(
                f"corner-gap-c{j + 1}-var{i}",
                abs(dist(corner, coords.c[j]) - 2.0) < 1e-12))

    # squares with no occurrence: the detour must break
    for i in range(1, n + 1):
        sc = inst.subcurves[i - 1]
        for j in range(k):
            if inst.formula.membership(i, j) != 0:
                continue
            for use_a in (True, False):
                detour = PolyCurve(_detoured_path(coords, use_a, [j]))
                checks.append(GadgetCheck(
                    f"no-detour-c{j + 1}-var{i}-{'A' if use_a else 'B'}",
                    not decide_frechet(sc, detour, EPS)))
        checks.append(GadgetCheck(
            f"blocking-sep-w-vs-ac-square-var{i}",
            all(point_segment_distance(coords.w[j], Segment(coords.a(j), coords.c[j])) > 1
                and point_segment_distance(coords.w[j], Segment(coords.b(j), coords.c[j])) > 1
                for j in range(k) if inst.formula.membership(i, j) == 0)))

    # forbidden hops must fail against every subcurve, anchored anywhere
    for name, hop in forbidden_hops(coords):
        ok = all(not decide_frechet_subcurve(sc, hop, EPS,
                                             free_start=True, free_goal=True)
                 for sc in inst.subcurves)
        checks.append(GadgetCheck(f"forbidden-{name}", ok))

    for name, val in separation_values(coords):
        checks.append(GadgetCheck(f"separation-{name}", val > 1.0, f"{val:.6g}"))

    return GadgetReport(tuple(checks))
