import math
import time
from fractions import Fraction

import pytest
import sympy
from sympy import QQ
from sympy.integrals.intpoly import polytope_integrate

from src.brion.summation import polygon_moments, sum_monomial_polygon
from src.brion.weights import Weight
from src.cones.decomposition import AffineCone
from src.ehrhart.euler_maclaurin import (apply_operator, coeff_t_ehrhart, ehrhart_quasipolynomial,
                                         evaluate_quasipolynomial, vertex_terms)
from src.ehrhart.integration import integrate_over_edge, integrate_over_polygon
from src.ehrhart.mu import (EdgeCone, PolygonFace, VertexFace, edge_cone, mu_cone, mu_dim1,
                            mu_dim2_unimodular, transverse_cones)
from src.ehrhart.periodic import PeriodicPolynomial, QuasiPolynomial, symbol_ring
from src.errors import IndexOutOfRange, NotUnimodular, OrderTooLow
from src.geometry.polygon import convex_hull, dilate, enumerate_lattice_points, vertex_cones
from src.geometry.primitives import IntVector2, RatPoint2
from src.series.laurent import TruncatedLaurent

F = Fraction
EVEN_ODD = PeriodicPolynomial.symbol(1, 2)
QUADRANT = AffineCone(RatPoint2(0, 0), IntVector2(1, 0), IntVector2(0, 1))


def test_symbols_are_canonical():
    assert PeriodicPolynomial.symbol(3, 2) == EVEN_ODD
    assert PeriodicPolynomial.symbol(-1, 2) == EVEN_ODD
    assert PeriodicPolynomial.symbol(4, 2) == 0
    assert PeriodicPolynomial.symbol(5, 1) == 0
    assert str(EVEN_ODD) == "fmod(t, 2)"
    assert str(PeriodicPolynomial.symbol(3, 5)) == "fmod(3*t, 5)"


def test_fractional_dilation():
    eps = PeriodicPolynomial.fractional_dilation(F(-1, 2))
    assert eps == EVEN_ODD / 2
    assert [eps.evaluate(t) for t in range(4)] == [0, F(1, 2), 0, F(1, 2)]
    third = PeriodicPolynomial.fractional_dilation(F(1, 3))
    for t in range(10):
        assert third.evaluate(t) == -(-t // 3) - F(t, 3)


def test_periodic_arithmetic():
    p = (EVEN_ODD - 1) ** 2
    assert [p.evaluate(t) for t in range(4)] == [1, 0, 1, 0]
    assert (3 - EVEN_ODD).evaluate(1) == 2
    assert (EVEN_ODD * PeriodicPolynomial.symbol(1, 3)).period == 6
    assert EVEN_ODD ** 2 != EVEN_ODD
    assert (EVEN_ODD ** 2).equivalent(EVEN_ODD)
    assert not EVEN_ODD.is_constant()
    assert PeriodicPolynomial.constant(F(5, 2)).constant_value() == F(5, 2)


def test_periodic_polynomial_ring():
    third = PeriodicPolynomial.symbol(1, 3)
    p = EVEN_ODD * third + 2 * EVEN_ODD
    assert p.symbol_keys == ((2, 1), (3, 1))
    assert p.element.ring == symbol_ring(((2, 1), (3, 1)))
    assert p.element.ring.ngens == 2
    assert p.element.ring.domain == QQ
    # generators drop out once no term uses them
    assert (p - EVEN_ODD * third).symbol_keys == ((2, 1),)
    assert (p - p).element.ring.ngens == 0
    assert hash(EVEN_ODD + third) == hash(third + EVEN_ODD)
    assert p.evaluate(5) == 1 * 2 + 2 * 1
    assert PeriodicPolynomial.from_json(p.to_json()) == p
    assert str(p) == "fmod(t, 2)*fmod(t, 3) + 2*fmod(t, 2)"


def test_quasipolynomial_structured_form():
    q = QuasiPolynomial(((EVEN_ODD - 1) ** 2, 2 - 2 * EVEN_ODD, PeriodicPolynomial.constant(1)))
    assert q.degree == 2
    assert q.period == 2
    restored = QuasiPolynomial.from_dict(q.to_dict())
    assert restored.equivalent(q)
    assert [restored.evaluate(t) for t in range(1, 5)] == [1, 9, 9, 25]
    with pytest.raises(IndexOutOfRange):
        q.coefficient(3)


def test_mu_dim1():
    assert mu_dim1(0, IntVector2(0, 1), 0).coefficients == {(0, 0): F(1, 2)}
    symbolic = mu_dim1(F(1, 2), IntVector2(0, 1), 0, symbolic=True)
    assert symbolic.coefficient(0, 0).equivalent(PeriodicPolynomial.constant(F(1, 2)) - EVEN_ODD / 2)
    integral = mu_dim1(3, IntVector2(1, 0), 2, symbolic=True)
    assert all(c.is_constant() for _, c in integral.items())


def test_mu_of_standard_quadrant_factorises():
    mu = mu_dim2_unimodular(QUADRANT, 2)
    assert mu.coefficient(0, 0) == F(1, 4)
    assert mu.coefficient(1, 0) == F(-1, 24)
    assert mu.coefficient(1, 1) == F(1, 144)
    shifted = AffineCone(RatPoint2(F(1, 2), F(1, 2)), IntVector2(1, 0), IntVector2(0, 1))
    assert mu_dim2_unimodular(shifted, 0).coefficient(0, 0) == 0


def test_mu_requires_unimodular_cone():
    with pytest.raises(NotUnimodular):
        mu_dim2_unimodular(AffineCone(RatPoint2(0, 0), IntVector2(1, 0), IntVector2(1, 2)), 1)


def test_vertex_mu_constants():
    square = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert sum(mu_cone(c, 0).coefficient(0, 0) for c in vertex_cones(square)) == 1
    triangle = convex_hull([(0, 0), (1, 0), (0, 1)])
    constants = [mu_cone(c, 0).coefficient(0, 0) for c in vertex_cones(triangle)]
    assert constants == [F(1, 4), F(3, 8), F(3, 8)]


def test_mu_is_analytic_and_path_independent(rng, random_polygon):
    for _ in range(5):
        polygon = random_polygon(rng, max_numerator=6, max_denominator=4)
        for cone in vertex_cones(polygon):
            lex = mu_cone(cone, 3, tie_break="lex")
            assert lex.is_analytic()
            assert lex == mu_cone(cone, 3, tie_break="reverse")
            symbolic_lex = mu_cone(cone, 2, symbolic=True, tie_break="lex")
            symbolic_rev = mu_cone(cone, 2, symbolic=True, tie_break="reverse")
            for m1 in range(3):
                for m2 in range(3 - m1):
                    a = PeriodicPolynomial.coerce(symbolic_lex.coefficient(m1, m2))
                    assert a.equivalent(PeriodicPolynomial.coerce(symbolic_rev.coefficient(m1, m2)))


def test_transverse_cones_of_square_and_transsquare(transsquare):
    square = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    faces = transverse_cones(square)
    assert [type(f) for f in faces].count(PolygonFace) == 1
    assert [type(f) for f in faces].count(EdgeCone) == 4
    assert [type(f) for f in faces].count(VertexFace) == 4
    bottom = faces[1]
    assert bottom.direction == IntVector2(1, 0)
    assert bottom.normal == RatPoint2(0, 1)
    assert bottom.offset == 0
    assert mu_dim1(bottom.offset, bottom.normal, 0).coefficient(0, 0) == F(1, 2)

    shifted_bottom = transverse_cones(convex_hull(transsquare))[1]
    assert shifted_bottom.offset == F(-1, 2)
    eps = PeriodicPolynomial.fractional_dilation(shifted_bottom.offset)
    assert eps == EVEN_ODD / 2


def test_edge_cone_of_a_long_diagonal():
    edge = edge_cone(RatPoint2(0, 0), RatPoint2(2, 2))
    assert edge.direction == IntVector2(1, 1)
    assert edge.length == 2
    assert edge.normal == RatPoint2(F(-1, 2), F(1, 2))
    assert integrate_over_edge(edge, {(1, 0): 1}) == {2: 2}


def test_integrate_over_edge_examples():
    edge = edge_cone(RatPoint2(0, 0), RatPoint2(1, 0))
    assert integrate_over_edge(edge, {(0, 0): 1}) == {1: 1}
    assert integrate_over_edge(edge, {(1, 0): 1}) == {2: F(1, 2)}


def test_apply_operator():
    h = Weight.monomial(2, 0)
    one = TruncatedLaurent.constant(F(1), 2)
    assert apply_operator(one, h) == {(2, 0): 1}
    assert apply_operator(TruncatedLaurent.constant(F(1, 2), 2), h) == {(2, 0): F(1, 2)}
    assert apply_operator(TruncatedLaurent({(0, 0): 1, (1, 0): 1}, 2), h) == {(2, 0): 1, (1, 0): 2}
    with pytest.raises(OrderTooLow):
        apply_operator(TruncatedLaurent.constant(F(1), 1), h)


def test_integrate_over_polygon_examples():
    square = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    triangle = convex_hull([(0, 0), (1, 0), (0, 1)])
    for method in ("triangulation", "green"):
        assert integrate_over_polygon(square, {(0, 0): 1}, method) == 1
        assert integrate_over_polygon(square, {(1, 0): 1}, method) == F(1, 2)
        assert integrate_over_polygon(triangle, {(0, 0): 1}, method) == F(1, 2)
    with pytest.raises(ValueError):
        integrate_over_polygon(square, {(0, 0): 1}, "monte-carlo")


def test_integration_methods_agree(rng, random_polygon):
    for _ in range(10):
        polygon = random_polygon(rng)
        for m in [(0, 0), (1, 0), (0, 3), (2, 2), (4, 1)]:
            assert (integrate_over_polygon(polygon, {m: 1}, "triangulation")
                    == integrate_over_polygon(polygon, {m: 1}, "green"))


def _sympy_region(polygon):
    # polytope_integrate expects clockwise vertices
    corners = [sympy.Point(sympy.Rational(v.x.numerator, v.x.denominator),
                           sympy.Rational(v.y.numerator, v.y.denominator))
               for v in reversed(polygon.vertices)]
    return sympy.Polygon(*corners)


def test_polygon_integrals_agree_with_sympy(rng, random_polygon, example_p):
    x, y = sympy.symbols("x y")
    polygons = [convex_hull([(0, 0), (1, 0), (1, 1), (0, 1)]), convex_hull([(0, 0), (1, 0), (0, 1)]),
                convex_hull(example_p)]
    polygons += [random_polygon(rng) for _ in range(4)]
    for polygon in polygons:
        region = _sympy_region(polygon)
        for i, j in [(0, 0), (1, 0), (0, 2), (3, 1), (2, 4)]:
            ours = integrate_over_polygon(polygon, {(i, j): 1})
            expected = polytope_integrate(region, x ** i * y ** j)
            assert sympy.simplify(expected - sympy.Rational(ours.numerator, ours.denominator)) == 0


def test_square_ehrhart_polynomial(square):
    q = ehrhart_quasipolynomial(square, (0, 0))
    assert str(q) == "1 + 2*t + t^2"
    assert [evaluate_quasipolynomial(q, t) for t in range(7)] == [(t + 1) ** 2 for t in range(7)]
    assert coeff_t_ehrhart(0, square, (0, 0)) == 1
    assert coeff_t_ehrhart(2, square, (0, 0)) == 1
    with pytest.raises(IndexOutOfRange):
        coeff_t_ehrhart(3, square, (0, 0))
    with pytest.raises(IndexOutOfRange):
        coeff_t_ehrhart(-1, square, (0, 0))


def test_transsquare_quasipolynomial(transsquare):
    q = ehrhart_quasipolynomial(transsquare, (0, 0))
    assert q.period == 2
    for t in range(1, 9):
        assert q.evaluate(t) == ((t + 1) ** 2 if t % 2 == 0 else t ** 2)
    assert evaluate_quasipolynomial(q, 3) == 9
    assert evaluate_quasipolynomial(q, 4) == 25
    expected = QuasiPolynomial(((EVEN_ODD - 1) ** 2, 2 - 2 * EVEN_ODD, PeriodicPolynomial.constant(1)))
    assert q.equivalent(expected)
    constant = coeff_t_ehrhart(0, transsquare, (0, 0))
    assert [constant.evaluate(t) for t in range(4)] == [1, 0, 1, 0]


def test_weighted_square(square):
    q = ehrhart_quasipolynomial(square, (5, 5))
    assert q.degree == 12
    assert q.evaluate(1) == 1
    for t in range(1, 4):
        expected = sum(x ** 5 * y ** 5 for x, y in enumerate_lattice_points(convex_hull(square).dilate(t)))
        assert q.evaluate(t) == expected


def test_top_coefficient_and_periodicity(rng, random_polygon):
    for _ in range(5):
        polygon = random_polygon(rng, max_numerator=5, max_denominator=3)
        for m in [(0, 0), (1, 1)]:
            q = ehrhart_quasipolynomial(polygon, m)
            top = q.coefficient(q.degree)
            assert top.is_constant()
            assert top.constant_value() == integrate_over_polygon(polygon, {m: 1})
            assert top.constant_value() == integrate_over_polygon(polygon, {m: 1}, "green")
            period = q.period
            assert polygon.denominator() % period == 0
            for c in q.coefficients:
                for t in range(period):
                    assert c.evaluate(t) == c.evaluate(t + period) == c.evaluate(t + 2 * period)


def test_integral_polygons_give_polynomials(rng, random_polygon):
    for _ in range(5):
        polygon = random_polygon(rng, max_numerator=4, integral=True)
        q = ehrhart_quasipolynomial(polygon, (0, 0))
        assert q.is_polynomial()
        assert q.period == 1
        assert q.evaluate(1) == len(enumerate_lattice_points(polygon))
        assert q.evaluate(0) == 1


def test_cross_validation_with_lattice_sums(rng, random_polygon):
    multidegrees = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 3), (2, 2), (3, 1)]
    for _ in range(20):
        polygon = random_polygon(rng, max_numerator=4, max_denominator=3)
        quasi = {m: ehrhart_quasipolynomial(polygon, m) for m in multidegrees}
        q = polygon.denominator()
        for t in range(1, 2 * q + 1):
            dilated = polygon.dilate(t)
            moments = polygon_moments(dilated, multidegrees)
            for m in multidegrees:
                assert quasi[m].evaluate(t) == moments[m] * math.factorial(m[0]) * math.factorial(m[1])
        for m in multidegrees[:3]:
            points = enumerate_lattice_points(polygon)
            assert quasi[m].evaluate(1) == sum(x ** m[0] * y ** m[1] for x, y in points)


def test_polynomial_weight_by_linearity(example_p):
    polygon = convex_hull(example_p)
    combined = ehrhart_quasipolynomial(polygon, Weight.from_terms({(1, 0): F(1, 2), (0, 0): 3}))
    x_part = ehrhart_quasipolynomial(polygon, (1, 0))
    count = ehrhart_quasipolynomial(polygon, (0, 0))
    for t in (1, 2, 5):
        assert combined.evaluate(t) == x_part.evaluate(t) / 2 + 3 * count.evaluate(t)


def test_vertex_terms_match_the_mu_operator(rng, random_polygon):
    weight = Weight.from_terms({(2, 1): 1, (1, 0): F(-3, 2), (0, 0): 2})
    for _ in range(4):
        polygon = random_polygon(rng, max_numerator=6, max_denominator=4)
        for face in transverse_cones(polygon):
            if not isinstance(face, VertexFace):
                continue
            s = face.cone.vertex
            expected = {}
            mu = mu_cone(face.cone, weight.degree, symbolic=True)
            for (i, j), c in apply_operator(mu, weight).items():
                expected[i + j] = expected.get(i + j, PeriodicPolynomial()) + c * (s.x ** i * s.y ** j)
            found = vertex_terms(face, weight)
            for power in set(expected) | set(found):
                a = found.get(power, PeriodicPolynomial())
                assert a.equivalent(expected.get(power, PeriodicPolynomial()))
            only_top = vertex_terms(face, weight, {3})
            assert set(only_top) <= {3}
            assert only_top.get(3, PeriodicPolynomial()).equivalent(found.get(3, PeriodicPolynomial()))


def test_single_coefficient_matches_full_quasipolynomial(rng, random_polygon):
    for _ in range(4):
        polygon = random_polygon(rng, max_numerator=5, max_denominator=4)
        for m in [(0, 0), (2, 1)]:
            quasi = ehrhart_quasipolynomial(polygon, m)
            for i in range(quasi.degree + 1):
                assert coeff_t_ehrhart(i, polygon, m).equivalent(quasi.coefficient(i))


@pytest.mark.slow
def test_large_triangle_against_lattice_sums(triangle_t):
    m = (2, 2)
    quasi = ehrhart_quasipolynomial(triangle_t, m)
    assert quasi.degree == 6
    for t in (1, 2):
        assert quasi.evaluate(t) == sum_monomial_polygon(dilate(triangle_t, t), m)
        # each coefficient computed on its own
        total = sum(coeff_t_ehrhart(i, triangle_t, m).evaluate(t) * t ** i for i in range(7))
        assert total == quasi.evaluate(t)
    top = coeff_t_ehrhart(18, triangle_t, (8, 8))
    assert top == integrate_over_polygon(convex_hull(triangle_t), {(8, 8): 1})
    start = time.perf_counter()
    second = coeff_t_ehrhart(2, triangle_t, (8, 8))
    assert time.perf_counter() - start <= 120
    assert convex_hull(triangle_t).denominator() % second.period == 0
