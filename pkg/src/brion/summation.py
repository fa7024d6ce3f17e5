"""
Exact sums of polynomials over the lattice points of a rational polygon.

Brion's identity writes sum_{x in p} e^<xi,x> as the sum of the generating
functions S(c) of the vertex cones.  Each cone is split into signed
unimodular cones, whose generating function factors as

    S(c) = (B(y1, k1) - 1/y1) (B(y2, k2) - 1/y2),   y_i = <xi, V_i>

with (k1, k2) the integer coordinates of the lattice point in the cone's
semi-closed box.  The Taylor coefficient of xi1^m1 xi2^m2 of the polygon's
function times m1! m2! is the sum of x^m1 y^m2.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from typing import Dict, Optional, Sequence, Tuple, Union

import psutil

from config import COMPUTE_CONFIG, SERIES_CONFIG
from src.brion.weights import Weight
from src.cones.decomposition import AffineCone, barvinok_decompose, cone_index, coords_in_basis
from src.errors import ConsistencyError, InputError, NotUnimodular
from src.geometry.polygon import Polygon, as_polygon, vertex_cones
from src.geometry.primitives import IntVector2
from src.series.bernoulli import b_coefficients
from src.series.laurent import (TruncatedLaurent, b_series, factorial_weight,
                                inverse_linear_form, linear_form_powers, multiply)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int]


@dataclass(frozen=True)
class BoxData:
    """Oriented basis (V1, V2) and box point coordinates (k1, k2) of a unimodular cone"""
    v1: IntVector2
    v2: IntVector2
    k1: int
    k2: int


def box_data(cone: AffineCone) -> BoxData:
    """Basis and integer ceilings of the vertex coordinates; the cone must be unimodular"""
    if cone_index(cone) != 1:
        raise NotUnimodular(f"cone of index {cone_index(cone)} is not unimodular")
    cone = cone.oriented()
    s1, s2 = coords_in_basis(cone.vertex, cone)
    return BoxData(cone.gen1, cone.gen2, math.ceil(s1), math.ceil(s2))


def unimodular_cone_series(cone: AffineCone, order: int, slack: int = None) -> TruncatedLaurent:
    """
    Iterated Laurent expansion of S(cone) through total degree ``order``.

    The factors are built at order + slack; the product is cut back to total
    degree <= order and xi1-degree <= order, where every coefficient is exact.
    """
    data = box_data(cone)
    if slack is None:
        slack = SERIES_CONFIG["slack"]
    if slack < 1:
        raise ValueError("slack must be at least 1 to absorb the simple poles")
    inner = order + slack
    f1 = b_series(data.k1, data.v1, inner) - inverse_linear_form(data.v1, inner, slack)
    f2 = b_series(data.k2, data.v2, inner) - inverse_linear_form(data.v2, inner, slack)
    return multiply(f1, f2).truncate(order, max_e1=order)


def cone_series(cone: AffineCone, order: int, tie_break: str = "lex") -> TruncatedLaurent:
    """
    Laurent expansion of the generating function of any vertex cone: the
    signed sum of unimodular_cone_series over its Barvinok decomposition.
    """
    if cone_index(cone) == 1:
        return unimodular_cone_series(cone, order)
    total = TruncatedLaurent({}, order)
    for piece in barvinok_decompose(cone, tie_break):
        total = total + unimodular_cone_series(piece.cone, order).scale(piece.sign)
    return total


def polygon_series(points, order: int, tie_break: str = "lex") -> TruncatedLaurent:
    """Sum of cone_series over all vertex cones; its polar part must vanish"""
    polygon = as_polygon(points)
    total = TruncatedLaurent({}, order)
    for cone in vertex_cones(polygon):
        total = total + cone_series(cone, order, tie_break)
    return total


def _pole_term(pole: IntVector2, g, other: IntVector2, m1: int, m2: int) -> Fraction:
    """
    Coefficient of xi1^m1 xi2^m2 in g <xi, other>^(m1+m2+1) / <xi, pole>,
    expanding 1/<xi, pole> with xi2 as the outer variable
    """
    if g == 0:
        return Fraction(0)
    a, b, c, d = pole.x, pole.y, other.x, other.y
    top = m1 + m2 + 1
    if b == 0:
        return g * Fraction(math.comb(top, m1 + 1) * c ** (m1 + 1) * d ** m2, a)
    total = 0
    for k in range(m1 + 1):
        total += ((-a) ** k * b ** (m1 - k) * math.comb(top, m1 - k)
                  * c ** (m1 - k) * d ** (m2 + 1 + k))
    return g * Fraction(total, b ** (m1 + 1))


class _MomentTables:
    """Powers of y1, y2 and B-coefficients of one unimodular cone up to a fixed degree"""

    def __init__(self, cone: AffineCone, degree: int, max_e1: int):
        self.data = box_data(cone)
        d = self.data
        self.g1 = b_coefficients(d.k1, degree + 1)
        self.g2 = b_coefficients(d.k2, degree + 1)
        self.p1 = linear_form_powers(d.v1.x, d.v1.y, degree, max_e1)
        self.p2 = linear_form_powers(d.v2.x, d.v2.y, degree, max_e1)

    def moment(self, m1: int, m2: int) -> Fraction:
        """Coefficient of xi1^m1 xi2^m2 in S(cone)"""
        d = self.data
        total_degree = m1 + m2
        analytic = Fraction(0)
        for n in range(total_degree + 1):
            row1, row2 = self.p1[n], self.p2[total_degree - n]
            lo = max(0, m1 - len(row2) + 1)
            hi = min(len(row1) - 1, m1)
            inner = 0
            for j in range(lo, hi + 1):
                inner += row1[j] * row2[m1 - j]
            if inner:
                analytic += self.g1[n] * self.g2[total_degree - n] * inner
        # 1/(y1 y2) has no coefficient with both exponents >= 0
        return (analytic
                - _pole_term(d.v1, self.g2[total_degree + 1], d.v2, m1, m2)
                - _pole_term(d.v2, self.g1[total_degree + 1], d.v1, m1, m2))


def unimodular_moment(cone: AffineCone, m1: int, m2: int) -> Fraction:
    """Coefficient of xi1^m1 xi2^m2 in S(cone) for a unimodular cone, without the full series"""
    return _MomentTables(cone, m1 + m2, m1).moment(m1, m2)


def cone_moment(cone: AffineCone, m1: int, m2: int, tie_break: str = "lex") -> Fraction:
    """Coefficient of xi1^m1 xi2^m2 in the series of any cone"""
    return sum((piece.sign * unimodular_moment(piece.cone, m1, m2)
                for piece in barvinok_decompose(cone, tie_break)), Fraction(0))


def _vertex_moments(cone: AffineCone, monomials: Sequence[Exponent],
                    tie_break: str) -> Dict[Exponent, Fraction]:
    degree = max(m1 + m2 for m1, m2 in monomials)
    max_e1 = max(m1 for m1, _ in monomials)
    pieces = barvinok_decompose(cone, tie_break)
    logger.debug("vertex %s: index %d, %d unimodular cones",
                 cone.vertex, cone_index(cone), len(pieces))
    out = {m: Fraction(0) for m in monomials}
    for piece in pieces:
        tables = _MomentTables(piece.cone, degree, max_e1)
        for m in monomials:
            out[m] += piece.sign * tables.moment(*m)
    return out


def resolve_threads(threads: Optional[int]) -> int:
    """Worker count: None takes the configured value, 0 means one per physical core"""
    if threads is None:
        threads = COMPUTE_CONFIG["threads"]
    if threads < 0:
        raise InputError(f"thread count must be >= 0, got {threads}")
    if threads == 0:
        return psutil.cpu_count(logical=False) or 1
    return threads


def polygon_moments(polygon: Polygon, monomials: Sequence[Exponent], threads: int = None,
                    tie_break: str = "lex") -> Dict[Exponent, Fraction]:
    """Taylor coefficients of the polygon's generating function at the given exponents"""
    monomials = tuple(sorted(set(monomials)))
    cones = vertex_cones(polygon)
    workers = min(resolve_threads(threads), len(cones))
    if workers <= 1:
        results = [_vertex_moments(cone, monomials, tie_break) for cone in cones]
    else:
        logger.debug("spreading %d vertex cones over %d processes", len(cones), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_vertex_moments, cones, repeat(monomials), repeat(tie_break)))

    totals = {m: Fraction(0) for m in monomials}
    for result in results:
        for m, value in result.items():
            totals[m] += value
    return totals


def _integral_sum(coefficient: Fraction, m: Exponent) -> int:
    value = coefficient * factorial_weight(*m)
    if value.denominator != 1:
        raise ConsistencyError(f"sum of x^{m[0]}*y^{m[1]} came out non-integral: {value}")
    return value.numerator


def sum_monomial_polygon(points, m: Exponent, threads: int = None,
                         tie_break: str = "lex") -> int:
    """Sum of x^m1 y^m2 over the lattice points of the hull of ``points``"""
    m1, m2 = m
    if m1 < 0 or m2 < 0:
        raise InputError(f"multidegree must be non-negative, got {m}")
    polygon = as_polygon(points)
    coefficient = polygon_moments(polygon, [(m1, m2)], threads, tie_break)[(m1, m2)]
    return _integral_sum(coefficient, (m1, m2))


def number_points_polygon(points, threads: int = None) -> int:
    """Lattice point count"""
    return sum_monomial_polygon(points, (0, 0), threads)


def sum_polynomial_polygon(points, h: Union[Weight, Dict[Exponent, Fraction]],
                           threads: int = None, tie_break: str = "lex") -> Fraction:
    """
    Sum of h over the lattice points; the vertex cones are decomposed once
    and shared by every monomial of h.
    """
    weight = h if isinstance(h, Weight) else Weight.from_terms(h)
    polygon = as_polygon(points)
    if not weight.terms:
        return Fraction(0)
    moments = polygon_moments(polygon, weight.monomials(), threads, tie_break)
    total = Fraction(0)
    for m, c in weight:
        total += c * _integral_sum(moments[m], m)
    return total

