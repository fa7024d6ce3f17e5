import math
from fractions import Fraction

import pytest

from src.cones.decomposition import (AffineCone, barvinok_decompose, cone_index, coords_in_basis,
                                     decompose_with_depth, short_vector, signed_decompose_step)
from src.errors import NotNeeded, ZeroVector
from src.geometry.primitives import IntVector2, RatPoint2

ORIGIN = RatPoint2(0, 0)


def cone(g1, g2, vertex=ORIGIN):
    return AffineCone(vertex, IntVector2(*g1), IntVector2(*g2))


def random_cone(rng, max_coordinate=700):
    while True:
        a = [int(v) for v in rng.integers(-max_coordinate, max_coordinate, size=4, endpoint=True)]
        g1, g2 = IntVector2(a[0], a[1]), IntVector2(a[2], a[3])
        if g1.is_primitive() and g2.is_primitive() and g1.x * g2.y - g1.y * g2.x != 0:
            return AffineCone(RatPoint2(Fraction(int(rng.integers(-9, 9)), int(rng.integers(1, 9))),
                                        Fraction(int(rng.integers(-9, 9)), int(rng.integers(1, 9)))),
                              g1, g2)


def test_cone_validation():
    with pytest.raises(ZeroVector):
        cone((2, 0), (0, 1))
    with pytest.raises(ZeroVector):
        cone((1, 2), (-1, -2))


def test_index_and_coordinates():
    c = cone((1, 0), (1, 2))
    assert cone_index(c) == 2
    u = coords_in_basis(IntVector2(1, 1), c)
    assert (u.u1, u.u2) == (Fraction(1, 2), Fraction(1, 2))
    assert u.sup_norm() == Fraction(1, 2)


def test_oriented_swaps_generators():
    c = cone((0, 1), (1, 0))
    assert c.det == -1
    assert c.oriented().det == 1
    assert c.oriented().gen1 == IntVector2(1, 0)


def test_contains():
    c = cone((1, 0), (1, 2), RatPoint2(Fraction(1, 2), 0))
    assert c.contains((2, 1))
    assert not c.contains((0, 0))


@pytest.mark.parametrize("gens,expected", [
    (((1, 0), (1, 2)), (1, 1)),
    (((1, 0), (1, 4)), (0, 1)),
])
def test_short_vector_examples(gens, expected):
    assert short_vector(cone(*gens)) == IntVector2(*expected)


def test_short_vector_rejects_unimodular_cones():
    with pytest.raises(NotNeeded):
        short_vector(cone((1, 0), (0, 1)))
    with pytest.raises(NotNeeded):
        signed_decompose_step(cone((1, 0), (1, 1)))


def test_short_vector_unknown_tie_break():
    with pytest.raises(ValueError):
        short_vector(cone((1, 0), (1, 2)), tie_break="random")


def test_decompose_step_of_index_two_cone():
    children = signed_decompose_step(cone((1, 0), (1, 2)))
    found = {(c.cone.gen1.as_tuple(), c.cone.gen2.as_tuple()): c.sign for c in children}
    assert found == {((1, 0), (1, 1)): 1, ((-1, -2), (1, 1)): -1}


def test_short_vector_bound_on_random_cones(rng):
    for _ in range(1000):
        c = random_cone(rng)
        n = cone_index(c)
        if n == 1:
            continue
        for tie_break in ("lex", "reverse"):
            v = short_vector(c, tie_break)
            assert v.is_primitive()
            # max |u_i| <= n^(-1/2), squared to stay exact
            assert coords_in_basis(v, c).sup_norm() ** 2 * n <= 1


def test_decomposition_children_shrink(rng):
    for _ in range(200):
        c = random_cone(rng).oriented()
        n = cone_index(c)
        if n == 1:
            continue
        for child in signed_decompose_step(c):
            assert child.sign in (1, -1)
            assert child.cone.det > 0
            assert cone_index(child.cone) <= math.isqrt(n)
            assert child.cone.vertex == c.vertex


def test_barvinok_output_is_unimodular(rng):
    for _ in range(100):
        c = random_cone(rng, max_coordinate=1000)
        for tie_break in ("lex", "reverse"):
            pieces = barvinok_decompose(c, tie_break)
            assert pieces
            assert all(p.cone.det == 1 for p in pieces)
            assert all(p.cone.vertex == c.vertex for p in pieces)


def test_barvinok_on_unimodular_cone_is_identity():
    c = cone((0, 1), (1, 0))
    pieces = barvinok_decompose(c)
    assert len(pieces) == 1
    assert pieces[0].sign == 1
    assert pieces[0].cone == c.oriented()


def square_root_steps(n):
    """How many integer square roots take n down to 1"""
    steps = 0
    while n > 1:
        n = math.isqrt(n)
        steps += 1
    return steps


def test_recursion_depth_is_doubly_logarithmic(rng):
    pieces, depth = decompose_with_depth(cone((1, 0), (99, 100)))
    assert all(p.cone.det == 1 for p in pieces)
    assert 1 <= depth <= square_root_steps(100) == 3
    assert decompose_with_depth(cone((1, 0), (0, 1)))[1] == 0

    wide = cone((1, 0), (999_999, 1_000_000))
    assert decompose_with_depth(wide)[1] <= square_root_steps(1_000_000) == 5
    for _ in range(100):
        c = random_cone(rng, max_coordinate=1000)
        n = cone_index(c)
        for tie_break in ("lex", "reverse"):
            pieces, depth = decompose_with_depth(c, tie_break)
            assert depth <= square_root_steps(n)
            assert depth <= 2 + math.log2(max(1.0, math.log2(n)))
            assert pieces == barvinok_decompose(c, tie_break)
