"""
Rational convex polygons: canonical hull, vertex cones and the brute-force
lattice point oracle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from src.cones.decomposition import AffineCone
from src.errors import BudgetExceeded, DegenerateHull
from src.geometry.primitives import RatPoint2, cross, primitive_direction, to_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polygon:
    """
    Strictly convex polygon, counter-clockwise, starting at its
    lexicographically smallest vertex
    """
    vertices: Tuple[RatPoint2, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> RatPoint2:
        return self.vertices[i % len(self.vertices)]

    def edges(self) -> List[Tuple[RatPoint2, RatPoint2]]:
        """Edges (start, end) in counter-clockwise order"""
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.vertices)

    def denominator(self) -> int:
        """Smallest q such that q times the polygon has integral vertices"""
        q = 1
        for v in self.vertices:
            q = math.lcm(q, v.x.denominator, v.y.denominator)
        return q

    def dilate(self, t: int) -> Polygon:
        if t <= 0:
            raise ValueError("dilation factor must be positive")
        return Polygon(tuple(v.scale(t) for v in self.vertices))

    def bounding_box(self) -> Tuple[int, int, int, int]:
        """Integer range (x_lo, x_hi, y_lo, y_hi) covering the polygon"""
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (math.ceil(min(xs)), math.floor(max(xs)),
                math.ceil(min(ys)), math.floor(max(ys)))

    def bounding_box_cells(self) -> int:
        x_lo, x_hi, y_lo, y_hi = self.bounding_box()
        return max(0, x_hi - x_lo + 1) * max(0, y_hi - y_lo + 1)


def as_point(p) -> RatPoint2:
    """RatPoint2 from a point or an exact (x, y) pair"""
    if isinstance(p, RatPoint2):
        return p
    x, y = p
    return RatPoint2(to_rational(x), to_rational(y))


def as_polygon(points) -> Polygon:
    """Canonical hull of a point collection; a Polygon passes through unchanged"""
    if isinstance(points, Polygon):
        return points
    return convex_hull(points)


def convex_hull(points: Iterable[RatPoint2]) -> Polygon:
    """
    Exact monotone-chain hull.

    Duplicates, interior points and points in the middle of an edge are
    dropped; the result starts at the lexicographic minimum.
    """
    pts = sorted({as_point(p) for p in points}, key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        raise DegenerateHull(f"degenerate hull: {len(pts)} distinct point(s)")

    lower: List[RatPoint2] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)

    upper: List[RatPoint2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)

    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateHull("degenerate hull: all points are collinear")

    logger.debug("hull of %d points has %d vertices", len(pts), len(hull))
    return Polygon(tuple(hull))


def vertices_in_counter_clock_order(points: Iterable[RatPoint2]) -> List[RatPoint2]:
    return list(convex_hull(points).vertices)


def dilate(points: Iterable[RatPoint2], t: int) -> List[RatPoint2]:
    return [as_point(p).scale(t) for p in points]


def vertex_cone(polygon: Polygon, i: int) -> AffineCone:
    """Supporting cone at vertex i: gen1 towards the next vertex, gen2 towards the previous one"""
    n = len(polygon)
    if not -n <= i < n:
        raise IndexError(f"vertex index {i} out of range for {n} vertices")
    s = polygon.vertex(i)
    gen1 = primitive_direction(polygon.vertex(i + 1) - s)
    gen2 = primitive_direction(polygon.vertex(i - 1) - s)
    return AffineCone(s, gen1, gen2)


def vertex_cones(polygon: Polygon) -> List[AffineCone]:
    return [vertex_cone(polygon, i) for i in range(len(polygon))]


def _column_range(polygon: Polygon, x: int) -> Tuple[Fraction, Fraction]:
    """Exact y-extent of the polygon on the vertical line through x"""
    ys: List[Fraction] = []
    for a, b in polygon.edges():
        lo, hi = min(a.x, b.x), max(a.x, b.x)
        if not lo <= x <= hi:
            continue
        if a.x == b.x:
            ys.extend((a.y, b.y))
        else:
            ys.append(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x))
    return min(ys), max(ys)


def enumerate_lattice_points(polygon: Polygon, budget: int = None) -> List[Tuple[int, int]]:
    """
    All integer points of the polygon, boundary included, sorted
    lexicographically.

    ``budget`` caps the number of bounding-box cells; None scans anything.
    """
    cells = polygon.bounding_box_cells()
    if budget is not None and cells > budget:
        raise BudgetExceeded(f"bounding box has {cells} cells, budget is {budget}")

    x_lo, x_hi, _, _ = polygon.bounding_box()
    points: List[Tuple[int, int]] = []
    for x in range(x_lo, x_hi + 1):
        y_min, y_max = _column_range(polygon, x)
        for y in range(math.ceil(y_min), math.floor(y_max) + 1):
            points.append((x, y))

    logger.debug("oracle scanned %d columns, found %d points", max(0, x_hi - x_lo + 1), len(points))
    return points


def contains(polygon: Polygon, x, y) -> bool:
    """Exact membership through the edge half-plane inequalities"""
    p = RatPoint2(x, y)
    return all(cross(a, b, p) >= 0 for a, b in polygon.edges())
