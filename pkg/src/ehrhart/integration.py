"""
Exact integrals of polynomials over polygons and edges.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Tuple, Union

from src.brion.weights import Weight
from src.geometry.polygon import Polygon
from src.geometry.primitives import RatPoint2, det

Exponent = Tuple[int, int]
PolyLike = Union[Weight, Mapping[Exponent, Any]]

METHODS = ("triangulation", "green")


def _terms(g: PolyLike) -> Dict[Exponent, Any]:
    return g.as_dict() if isinstance(g, Weight) else dict(g)


def _univariate_power(c0, c1, n: int) -> List[Fraction]:
    """Coefficients of (c0 + c1 s)^n, index = power of s"""
    return [math.comb(n, k) * Fraction(c0) ** (n - k) * Fraction(c1) ** k for k in range(n + 1)]


def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _affine_power(c0, cs, cr, n: int) -> Dict[Exponent, Fraction]:
    """(c0 + cs s + cr r)^n as {(a, b): coefficient of s^a r^b}"""
    out: Dict[Exponent, Fraction] = {}
    c0, cs, cr = Fraction(c0), Fraction(cs), Fraction(cr)
    for a in range(n + 1):
        for b in range(n - a + 1):
            k = n - a - b
            c = math.factorial(n) // (math.factorial(a) * math.factorial(b) * math.factorial(k))
            value = c * cs ** a * cr ** b * c0 ** k
            if value:
                out[(a, b)] = value
    return out


def _triangle_monomial(v0: RatPoint2, e1: RatPoint2, e2: RatPoint2, i: int, j: int) -> Fraction:
    """Integral of x^i y^j over the triangle v0, v0 + e1, v0 + e2"""
    xs = _affine_power(v0.x, e1.x, e2.x, i)
    ys = _affine_power(v0.y, e1.y, e2.y, j)
    total = Fraction(0)
    for (a1, b1), cx in xs.items():
        for (a2, b2), cy in ys.items():
            a, b = a1 + a2, b1 + b2
            # integral of s^a r^b over the standard simplex
            total += cx * cy * Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 2))
    return total * abs(det(e1, e2))


def _green_monomial(polygon: Polygon, i: int, j: int) -> Fraction:
    """Boundary integral of x^(i+1) y^j / (i+1) dy"""
    total = Fraction(0)
    for a, b in polygon.edges():
        dx, dy = b.x - a.x, b.y - a.y
        if dy == 0:
            continue
        integrand = _poly_mul(_univariate_power(a.x, dx, i + 1), _univariate_power(a.y, dy, j))
        total += dy * sum(c / (k + 1) for k, c in enumerate(integrand))
    return total / (i + 1)


def integrate_over_polygon(polygon: Polygon, g: PolyLike, method: str = "triangulation") -> Fraction:
    """Lebesgue integral of the polynomial g over the polygon"""
    if method not in METHODS:
        raise ValueError(f"unknown integration method {method!r}")
    total = Fraction(0)
    for (i, j), c in _terms(g).items():
        if method == "green":
            total += c * _green_monomial(polygon, i, j)
            continue
        v0 = polygon.vertex(0)
        for k in range(1, len(polygon) - 1):
            e1 = polygon.vertex(k) - v0
            e2 = polygon.vertex(k + 1) - v0
            total += c * _triangle_monomial(v0, e1, e2, i, j)
    return total


def edge_monomial_integral(start: RatPoint2, direction, length, i: int, j: int) -> Fraction:
    """Integral over sigma in [0, length] of x^i y^j at start + sigma * direction"""
    integrand = _poly_mul(_univariate_power(start.x, direction.x, i),
                          _univariate_power(start.y, direction.y, j))
    length = Fraction(length)
    return sum((c * length ** (k + 1) / (k + 1) for k, c in enumerate(integrand)), Fraction(0))


def integrate_over_edge(edge, g: Mapping[Exponent, Any]) -> Dict[int, Any]:
    """
    Integral of g over the dilated edge t*edge, with respect to the lattice
    length measure, as {power of t: coefficient}.

    Substituting tau = t*sigma, a monomial of degree k contributes
    t^(k+1) times its integral over the undilated edge.  Coefficients of g
    may be periodic; they do not depend on the integration variable.
    """
    out: Dict[int, Any] = {}
    for (i, j), c in _terms(g).items():
        value = edge_monomial_integral(edge.start, edge.direction, edge.length, i, j)
        if not value:
            continue
        power = i + j + 1
        out[power] = out[power] + c * value if power in out else c * value
    return out
