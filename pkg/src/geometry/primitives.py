"""
Exact scalars, lattice vectors and rational plane points.

Nothing in this package ever touches floating point: scalars are
``fractions.Fraction`` (always reduced, positive denominator) and lattice
vectors hold Python integers of arbitrary size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from src.errors import InputError, ZeroVector

ExactRational = Fraction
Scalar = Union[int, Fraction]


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a "num/den" string"""
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"refusing inexact value {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InputError(f"not an exact rational: {value!r}") from e


def format_rational(value: Fraction) -> str:
    """"num/den", or just the integer when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class IntVector2:
    """Integer lattice vector"""
    x: int
    y: int

    def __add__(self, other: IntVector2) -> IntVector2:
        return IntVector2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: IntVector2) -> IntVector2:
        return IntVector2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> IntVector2:
        return IntVector2(-self.x, -self.y)

    def scale(self, k: int) -> IntVector2:
        return IntVector2(k * self.x, k * self.y)

    def dot(self, other) -> Scalar:
        return self.x * other.x + self.y * other.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_primitive(self) -> bool:
        return not self.is_zero() and math.gcd(self.x, self.y) == 1

    def as_tuple(self) -> Tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class RatPoint2:
    """Point of the rational plane"""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other) -> RatPoint2:
        return RatPoint2(self.x + other.x, self.y + other.y)

    def __sub__(self, other) -> RatPoint2:
        return RatPoint2(self.x - other.x, self.y - other.y)

    def scale(self, k: Scalar) -> RatPoint2:
        return RatPoint2(k * self.x, k * self.y)

    def dot(self, other) -> Fraction:
        return self.x * other.x + self.y * other.y

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_tuple(self) -> Tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"[{format_rational(self.x)},{format_rational(self.y)}]"


def det(a, b) -> Scalar:
    """det of the 2x2 matrix with columns a, b"""
    return a.x * b.y - a.y * b.x


def cross(o, a, b) -> Fraction:
    """(a - o) x (b - o); positive when o, a, b turn counter-clockwise"""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def primitive(v: IntVector2) -> IntVector2:
    """v divided by the gcd of its coordinates"""
    if v.is_zero():
        raise ZeroVector("primitive() of the zero vector")
    g = math.gcd(v.x, v.y)
    return IntVector2(v.x // g, v.y // g)


def primitive_direction(d) -> IntVector2:
    """Primitive integer vector pointing along a nonzero rational direction"""
    dx, dy = Fraction(d.x), Fraction(d.y)
    if dx == 0 and dy == 0:
        raise ZeroVector("direction of a zero displacement")
    scale = math.lcm(dx.denominator, dy.denominator)
    return primitive(IntVector2(int(dx * scale), int(dy * scale)))


def ceil_frac(r: Scalar) -> Tuple[int, Fraction]:
    """(ceil(r), ceil(r) - r); the second component lies in [0, 1)"""
    r = Fraction(r)
    c = math.ceil(r)
    return c, c - r
