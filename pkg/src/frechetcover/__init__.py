"""Polygonal tours through point sets under a Fréchet tolerance.

Decide whether a polygonal curve that visits every point of a point set
(reusing points as needed) exists within Fréchet distance eps of a target:
a polynomial decision for convex-polygon targets, a 3CNF gadget generator
whose instances encode satisfiability, and a brute-force oracle that
cross-validates both.
"""

from .geometry import (Ball, ConvexPolygon, GeometryError, Point, PolyCurve,
                       Segment, ball_segment_intersection, concat,
                       convex_hull, densified, dist, midpoint,
                       perpendicular_foot, point_segment_distance,
                       segment_intersection, TOL)
from .frechet import (FreeSpaceDiagram, PrefixMatcher, decide_frechet,
                      decide_frechet_subcurve, discrete_frechet,
                      four_point_bound, min_frechet, verify_schedule)

__all__ = [
    "Ball", "ConvexPolygon", "GeometryError", "Point", "PolyCurve", "Segment",
    "TOL", "ball_segment_intersection", "concat", "convex_hull", "densified",
    "dist", "midpoint", "perpendicular_foot", "point_segment_distance",
    "segment_intersection",
    "FreeSpaceDiagram", "PrefixMatcher", "decide_frechet",
    "decide_frechet_subcurve", "discrete_frechet", "four_point_bound",
    "min_frechet", "verify_schedule",
]
