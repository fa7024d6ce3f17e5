"""
Weighted Ehrhart quasi-polynomials through the local Euler-Maclaurin formula.

    sum_{x in tp} h(x) = sum over faces f of integral over tf of D(tp, tf) h

where D(tp, tf) is the differential operator obtained from mu of the
transverse cone by substituting d/dx, d/dy for xi1, xi2.  The polygon
contributes t^(k+2) times the integral of each degree-k part of h, an edge
contributes an integral along the dilated edge, and a vertex contributes
D h evaluated at the dilated vertex.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Set, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from src.brion.weights import Weight
from src.cones.decomposition import barvinok_decompose
from src.ehrhart.integration import integrate_over_edge, integrate_over_polygon
from src.ehrhart.mu import (EdgeCone, PolygonFace, VertexFace, mu_dim1, transverse_cones,
                            unimodular_mu_terms)
from src.ehrhart.periodic import PeriodicPolynomial, QuasiPolynomial, from_qq, to_qq
from src.errors import IndexOutOfRange, OrderTooLow
from src.geometry.polygon import as_polygon
from src.series.laurent import TruncatedLaurent

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int]
WeightLike = Union[Weight, Tuple[int, int], Mapping[Exponent, Any]]

# h(s + a V1 + b V2) lives in QQ[a, b]
SHIFT_RING, SHIFT_A, SHIFT_B = ring("a,b", QQ, lex)


def as_weight(h: WeightLike) -> Weight:
    if isinstance(h, Weight):
        return h
    if isinstance(h, tuple) and len(h) == 2 and all(isinstance(m, int) for m in h):
        return Weight.monomial(*h)
    return Weight.from_terms(h)


def _falling(n: int, k: int) -> int:
    return math.factorial(n) // math.factorial(n - k)


def apply_operator(mu: TruncatedLaurent, h: WeightLike) -> Dict[Exponent, Any]:
    """D h = sum_a mu_a d^a h, exact when mu is known through degree deg h"""
    weight = as_weight(h)
    if mu.order < weight.degree:
        raise OrderTooLow(f"operator known through degree {mu.order}, weight has degree {weight.degree}")
    if not mu.is_analytic():
        raise ValueError("differential operators come from analytic series only")
    out: Dict[Exponent, Any] = {}
    for (a1, a2), c in mu.items():
        for (i, j), hc in weight:
            if a1 > i or a2 > j:
                continue
            e = (i - a1, j - a2)
            term = c * (hc * _falling(i, a1) * _falling(j, a2))
            out[e] = out[e] + term if e in out else term
    return {e: c for e, c in out.items() if not c == 0}


def _homogeneous_parts(weight: Weight) -> Dict[int, List[Tuple[Exponent, Fraction]]]:
    parts: Dict[int, List[Tuple[Exponent, Fraction]]] = {}
    for (i, j), c in weight:
        parts.setdefault(i + j, []).append(((i, j), c))
    return parts


def _shifted_part(monomials, s, p1, p2, d: int):
    """Degree-d part in (a, b) of sum c x^i y^j at (x, y) = s + (l1, l2), p_k = powers of l_k"""
    total = SHIFT_RING.zero
    for (i, j), c in monomials:
        for r in range(max(0, d - j), min(i, d) + 1):
            k = c * math.comb(i, r) * math.comb(j, d - r) * s.x ** (i - r) * s.y ** (j - d + r)
            if k:
                total += (p1[r] * p2[d - r]).mul_ground(to_qq(k))
    return total


def vertex_terms(face: VertexFace, weight: Weight, powers: Optional[Set[int]] = None,
                 tie_break: str = "lex") -> Dict[int, PeriodicPolynomial]:
    """
    Contribution of one vertex to each power of t.

    mu of a unimodular piece with generators V1, V2 is a series in
    y_i = <xi, V_i>, so y1^n1 y2^n2 acts on h as the directional derivative
    n1! n2! [a^n1 b^n2] h(s + a V1 + b V2).  An order-d derivative of the
    degree-D part of h lands on t^(D - d).  Only ``powers`` are computed
    when given.
    """
    s = face.cone.vertex
    parts = _homogeneous_parts(weight)
    wanted: Dict[int, List[int]] = {}
    for degree in parts:
        orders = range(degree + 1) if powers is None else (degree - k for k in powers)
        wanted[degree] = sorted(d for d in orders if 0 <= d <= degree)
    needed = {d for orders in wanted.values() for d in orders}
    out: Dict[int, PeriodicPolynomial] = {}
    if not needed:
        return out

    order = weight.degree
    for piece in barvinok_decompose(face.cone, tie_break):
        cone, terms = unimodular_mu_terms(piece.cone, order, symbolic=True, degrees=needed)
        v1, v2 = cone.gen1, cone.gen2
        l1 = SHIFT_A * v1.x + SHIFT_B * v2.x
        l2 = SHIFT_A * v1.y + SHIFT_B * v2.y
        p1, p2 = [SHIFT_RING.one], [SHIFT_RING.one]
        for _ in range(max(needed)):
            p1.append(p1[-1] * l1)
            p2.append(p2[-1] * l2)
        for degree, monomials in parts.items():
            for d in wanted[degree]:
                shifted = _shifted_part(monomials, s, p1, p2, d)
                total = PeriodicPolynomial()
                for (n1, n2), c in terms.items():
                    if n1 + n2 != d or (n1, n2) not in shifted:
                        continue
                    derivative = from_qq(shifted[(n1, n2)]) * math.factorial(n1) * math.factorial(n2)
                    total = total + c * (piece.sign * derivative)
                out[degree - d] = out[degree - d] + total if degree - d in out else total
    return out


def _face_terms(polygon, weight: Weight, powers: Optional[Set[int]],
                tie_break: str) -> Dict[int, PeriodicPolynomial]:
    degree = weight.degree
    out: Dict[int, PeriodicPolynomial] = {}

    def add(power: int, value) -> None:
        if powers is None or power in powers:
            out[power] = out[power] + value if power in out else PeriodicPolynomial.coerce(value)

    for face in transverse_cones(polygon):
        if isinstance(face, PolygonFace):
            for (i, j), c in weight:
                if powers is None or i + j + 2 in powers:
                    add(i + j + 2, c * integrate_over_polygon(polygon, {(i, j): 1}))
        elif isinstance(face, EdgeCone):
            mu = mu_dim1(face.offset, face.normal, degree, symbolic=True)
            for power, c in integrate_over_edge(face, apply_operator(mu, weight)).items():
                add(power, c)
        elif isinstance(face, VertexFace):
            for power, c in vertex_terms(face, weight, powers, tie_break).items():
                add(power, c)
    return out


def ehrhart_quasipolynomial(points, h: WeightLike, tie_break: str = "lex") -> QuasiPolynomial:
    """t -> sum of h over t p, for integers t >= 1"""
    polygon = as_polygon(points)
    weight = as_weight(h)
    terms = _face_terms(polygon, weight, None, tie_break)
    coefficients = tuple(terms.get(k, PeriodicPolynomial()) for k in range(weight.degree + 3))
    result = QuasiPolynomial(coefficients)
    logger.debug("quasi-polynomial of degree %d, period %d", result.degree, result.period)
    return result


def coeff_t_ehrhart(i: int, points, h: WeightLike, tie_break: str = "lex") -> PeriodicPolynomial:
    """Coefficient of t^i of the weighted Ehrhart quasi-polynomial, computed alone"""
    weight = as_weight(h)
    if not 0 <= i <= weight.degree + 2:
        raise IndexOutOfRange(f"coefficient index {i} outside 0..{weight.degree + 2}")
    terms = _face_terms(as_polygon(points), weight, {i}, tie_break)
    return terms.get(i, PeriodicPolynomial())


def evaluate_quasipolynomial(q: QuasiPolynomial, t: int):
    return q.evaluate(t)
