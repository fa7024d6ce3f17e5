"""
The analytic functions mu of transverse cones (standard scalar product).

mu of the polygon itself is 1, mu of an edge's transverse cone
(s + R+) V is B(<xi, V>, ceil(s) - s), and mu of a vertex cone is obtained
from unimodular cones through the signed decomposition.  In symbolic mode
the cones belong to the dilated polygon t p and ceil(t s) - t s becomes
fmod(-p t, q)/q.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Set, Tuple, Union

from src.cones.decomposition import AffineCone, barvinok_decompose, cone_index, coords_in_basis
from src.ehrhart.periodic import PeriodicPolynomial
from src.errors import NotUnimodular
from src.geometry.polygon import Polygon, vertex_cone
from src.geometry.primitives import IntVector2, RatPoint2, ceil_frac, primitive_direction
from src.series.bernoulli import b_coefficients
from src.series.laurent import TruncatedLaurent, b_series, substitute_basis

logger = logging.getLogger(__name__)


def fractional_offset(s, symbolic: bool):
    """ceil(s) - s, or ceil(t s) - t s as a periodic function of t"""
    if symbolic:
        return PeriodicPolynomial.fractional_dilation(s)
    return ceil_frac(s)[1]


def mu_dim1(s, v, order: int, symbolic: bool = False) -> TruncatedLaurent:
    """mu of the half-line (s + R+) V"""
    return b_series(fractional_offset(s, symbolic), v, order)


def unimodular_mu_terms(cone: AffineCone, order: int, symbolic: bool = False,
                        degrees: Optional[Set[int]] = None) -> Tuple[AffineCone, Dict[tuple, Any]]:
    """
    mu of a unimodular plane cone in y_i = <xi, V_i>, V_i the generators of
    the returned oriented cone.  With C1 = <V1,V2>/|V1|^2, C2 = <V1,V2>/|V2|^2,

      mu = B(y1,e1) B(y2,e2) + [B(y2 - C1 y1, e2) - B(y2, e2)] / y1
                             + [B(y1 - C2 y2, e1) - B(y1, e1)] / y2

    Both brackets are divided exactly by expanding B term by term.  Only
    total degrees in ``degrees`` are kept when it is given.
    """
    if abs(cone.det) != 1:
        raise NotUnimodular(f"mu_dim2_unimodular needs |det| = 1, got {cone.det}")
    cone = cone.oriented()
    v1, v2 = cone.gen1, cone.gen2
    s1, s2 = coords_in_basis(cone.vertex, cone)
    eps1 = fractional_offset(s1, symbolic)
    eps2 = fractional_offset(s2, symbolic)
    g1 = b_coefficients(eps1, order + 1)
    g2 = b_coefficients(eps2, order + 1)

    cross = v1.dot(v2)
    c1 = Fraction(cross, v1.dot(v1))
    c2 = Fraction(cross, v2.dot(v2))

    def kept(total: int) -> bool:
        return degrees is None or total in degrees

    terms: Dict[tuple, Any] = {}

    def add(e, value):
        terms[e] = terms[e] + value if e in terms else value

    for n1 in range(order + 1):
        for n2 in range(order + 1 - n1):
            if kept(n1 + n2):
                add((n1, n2), g1[n1] * g2[n2])
    if cross:
        # (y2 - C1 y1)^n - y2^n = sum_{j>=1} C(n,j) (-C1 y1)^j y2^(n-j)
        for n in range(1, order + 2):
            if not kept(n - 1):
                continue
            for j in range(1, n + 1):
                add((j - 1, n - j), g2[n] * (math.comb(n, j) * (-c1) ** j))
                add((n - j, j - 1), g1[n] * (math.comb(n, j) * (-c2) ** j))
    return cone, terms


def mu_dim2_unimodular(cone: AffineCone, order: int, symbolic: bool = False) -> TruncatedLaurent:
    """mu of a unimodular plane cone, as a series in xi"""
    cone, terms = unimodular_mu_terms(cone, order, symbolic)
    return substitute_basis(TruncatedLaurent(terms, order), cone.gen1, cone.gen2)


def mu_cone(cone: AffineCone, order: int, symbolic: bool = False,
            tie_break: str = "lex") -> TruncatedLaurent:
    """
    mu of any plane cone: the signed sum of mu over its unimodular pieces.
    The result does not depend on the decomposition path.
    """
    if cone_index(cone) == 1:
        return mu_dim2_unimodular(cone, order, symbolic)
    total = TruncatedLaurent({}, order)
    for piece in barvinok_decompose(cone, tie_break):
        total = total + mu_dim2_unimodular(piece.cone, order, symbolic).scale(piece.sign)
    return total


@dataclass(frozen=True)
class PolygonFace:
    """The polygon itself; its transverse cone is a point and mu = 1"""
    polygon: Polygon


@dataclass(frozen=True)
class EdgeCone:
    """
    Edge from ``start`` to ``end`` = start + length * direction, with its
    transverse cone (offset + R+) normal on the line orthogonal to the edge
    """
    start: RatPoint2
    end: RatPoint2
    direction: IntVector2
    length: Fraction
    normal: RatPoint2
    offset: Fraction


@dataclass(frozen=True)
class VertexFace:
    index: int
    cone: AffineCone


TransverseCone = Union[PolygonFace, EdgeCone, VertexFace]


def edge_cone(start: RatPoint2, end: RatPoint2) -> EdgeCone:
    """Transverse data of a counter-clockwise edge"""
    u = primitive_direction(end - start)
    delta = end - start
    length = delta.x / u.x if u.x else delta.y / u.y
    inward = RatPoint2(-u.y, u.x)
    norm2 = inward.dot(inward)
    normal = RatPoint2(inward.x / norm2, inward.y / norm2)
    return EdgeCone(start, end, u, length, normal, start.dot(inward))


def transverse_cones(polygon: Polygon) -> List[TransverseCone]:
    faces: List[TransverseCone] = [PolygonFace(polygon)]
    faces.extend(edge_cone(a, b) for a, b in polygon.edges())
    faces.extend(VertexFace(i, vertex_cone(polygon, i)) for i in range(len(polygon)))
    logger.debug("%d transverse cones for a %d-gon", len(faces), len(polygon))
    return faces
