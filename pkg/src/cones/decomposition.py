"""
Affine plane cones and their signed decomposition into unimodular cones.

A decomposition step picks a short lattice vector V and rewrites the cone
as a signed sum of cones in which V replaces one generator.  The identity
holds for characteristic functions modulo cones containing a line, which
every valuation used here sends to zero.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from src.errors import ConsistencyError, NotNeeded, ZeroVector
from src.geometry.primitives import IntVector2, RatPoint2, det, primitive

logger = logging.getLogger(__name__)

TIE_BREAKS = ("lex", "reverse")


@dataclass(frozen=True)
class AffineCone:
    """Cone vertex + R+ gen1 + R+ gen2 with primitive generators"""
    vertex: RatPoint2
    gen1: IntVector2
    gen2: IntVector2

    def __post_init__(self):
        if not (self.gen1.is_primitive() and self.gen2.is_primitive()):
            raise ZeroVector(f"cone generators must be primitive: {self.gen1}, {self.gen2}")
        if det(self.gen1, self.gen2) == 0:
            raise ZeroVector("cone generators are parallel")

    @property
    def det(self) -> int:
        return det(self.gen1, self.gen2)

    def oriented(self) -> AffineCone:
        """Same cone with generators ordered so that det > 0"""
        if self.det > 0:
            return self
        return AffineCone(self.vertex, self.gen2, self.gen1)

    def contains(self, point) -> bool:
        u = coords_in_basis(RatPoint2(point[0], point[1]) - self.vertex, self)
        return u.u1 >= 0 and u.u2 >= 0


@dataclass(frozen=True)
class SignedCone:
    cone: AffineCone
    sign: int


@dataclass(frozen=True)
class BasisCoordinates:
    """Exact (u1, u2) with V = u1 * gen1 + u2 * gen2"""
    u1: Fraction
    u2: Fraction

    def __iter__(self):
        return iter((self.u1, self.u2))

    def sup_norm(self) -> Fraction:
        return max(abs(self.u1), abs(self.u2))


def cone_index(cone: AffineCone) -> int:
    """Lattice index of the generators: |det(gen1, gen2)|, 1 for unimodular cones"""
    return abs(cone.det)


def coords_in_basis(v, cone: AffineCone) -> BasisCoordinates:
    """Cramer's rule; v may be an integer vector or a rational point"""
    d = cone.det
    u1 = Fraction(det(v, cone.gen2)) / d
    u2 = Fraction(det(cone.gen1, v)) / d
    return BasisCoordinates(u1, u2)


def _round_div(p: int, q: int) -> int:
    """Nearest integer to p/q (q > 0), halves rounded up"""
    return (2 * p + q) // (2 * q)


def _norm2(v: Tuple[int, int]) -> int:
    return v[0] * v[0] + v[1] * v[1]


def _gauss_reduce(b1, b2, v1, v2):
    """
    Lagrange-Gauss reduction of the integer basis (b1, b2), applying the same
    unimodular moves to the tracked vectors (v1, v2).
    """
    if _norm2(b1) > _norm2(b2):
        b1, b2, v1, v2 = b2, b1, v2, v1
    while True:
        mu = _round_div(b1[0] * b2[0] + b1[1] * b2[1], _norm2(b1))
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        v2 = (v2[0] - mu * v1[0], v2[1] - mu * v1[1])
        if _norm2(b2) >= _norm2(b1):
            return b1, b2, v1, v2
        b1, b2, v1, v2 = b2, b1, v2, v1


def _sign_normalized(v: Tuple[int, int]) -> Tuple[int, int]:
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        return (-v[0], -v[1])
    return v


def short_vector(cone: AffineCone, tie_break: str = "lex") -> IntVector2:
    """
    Nonzero lattice vector whose coordinates in the cone basis have
    sup-norm at most index^(-1/2).

    Coordinates are u = adj(A) V / det(A) for the generator matrix A, so the
    search runs on the integer lattice adj(A) Z^2 where the sup-norm is
    index * max|u_i|.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"unknown tie_break {tie_break!r}")
    n = cone_index(cone)
    if n == 1:
        raise NotNeeded("cone is already unimodular")

    g1, g2 = cone.gen1, cone.gen2
    b1, b2, v1, v2 = _gauss_reduce((g2.y, -g1.y), (-g2.x, g1.x), (1, 0), (0, 1))

    candidates = {}
    for x in range(-2, 3):
        for y in range(-2, 3):
            if x == 0 and y == 0:
                continue
            w = (x * b1[0] + y * b2[0], x * b1[1] + y * b2[1])
            v = (x * v1[0] + y * v2[0], x * v1[1] + y * v2[1])
            # w is n*u up to the sign of det; same-sign coordinates orient v into the cone
            same_sign = w[0] * w[1] >= 0
            if same_sign:
                inward = (w[0] + w[1]) * cone.det > 0
                key_vector = v if inward else (-v[0], -v[1])
            else:
                key_vector = _sign_normalized(v)
            candidates[key_vector] = (max(abs(w[0]), abs(w[1])), 0 if same_sign else 1)

    best_norm = min(norm for norm, _ in candidates.values())
    if best_norm * best_norm > n:
        raise ConsistencyError(f"short vector bound violated: {best_norm}^2 > {n}")
    ties = [(rank, vec) for vec, (norm, rank) in candidates.items() if norm == best_norm]
    best_rank = min(rank for rank, _ in ties)
    pool = sorted(vec for rank, vec in ties if rank == best_rank)
    chosen = pool[0] if tie_break == "lex" else pool[-1]
    return primitive(IntVector2(*chosen))


def signed_decompose_step(cone: AffineCone, tie_break: str = "lex") -> List[SignedCone]:
    """
    One signed decomposition step around V = short_vector(cone).

    With L+ = (X_1..X_k) the generators where V has positive coordinate and
    L- = (Y_1..Y_m) the negative ones,

      (-1)^(k+1) [c] = sum_i (-1)^(i+1) [c(X_1..X_{i-1}, -X_{i+1}..-X_k, V, L-)]
                     + sum_j (-1)^(j+k) [c(L+, -V, -Y_1..-Y_{j-1}, Y_{j+1}..Y_m)]

    modulo cones containing lines.  Children are returned with signs solved
    for [c] and with det > 0.
    """
    n = cone_index(cone)
    if n == 1:
        raise NotNeeded("cone is already unimodular")

    v = short_vector(cone, tie_break)
    u = coords_in_basis(v, cone)
    gens = (cone.gen1, cone.gen2)
    plus = [g for g, c in zip(gens, u) if c > 0]
    minus = [g for g, c in zip(gens, u) if c < 0]
    if len(plus) + len(minus) != 2:
        raise ConsistencyError(f"short vector {v} lies on a generator ray of index-{n} cone")

    k, m = len(plus), len(minus)
    flip = (-1) ** (k + 1)
    children: List[SignedCone] = []
    for i in range(1, k + 1):
        rays = plus[:i - 1] + [-x for x in plus[i:]] + [v] + minus
        children.append(_child(cone, rays, (-1) ** (i + 1) * flip))
    for j in range(1, m + 1):
        rays = plus + [-v] + [-y for y in minus[:j - 1]] + minus[j:]
        children.append(_child(cone, rays, (-1) ** (j + k) * flip))

    for child in children:
        if cone_index(child.cone) >= n:
            raise ConsistencyError(f"child index {cone_index(child.cone)} does not drop below {n}")
    return children


def _child(parent: AffineCone, rays: List[IntVector2], sign: int) -> SignedCone:
    a, b = (primitive(r) for r in rays)
    return SignedCone(AffineCone(parent.vertex, a, b).oriented(), sign)


def barvinok_decompose(cone: AffineCone, tie_break: str = "lex") -> List[SignedCone]:
    """Signed unimodular cones, all with vertex(cone) and det = +1"""
    return decompose_with_depth(cone, tie_break)[0]


def decompose_with_depth(cone: AffineCone, tie_break: str = "lex") -> Tuple[List[SignedCone], int]:
    """barvinok_decompose plus the depth of the recursion (0 for a unimodular cone)"""
    result: List[SignedCone] = []
    depth = _decompose_into(cone.oriented(), 1, tie_break, result, 0)
    logger.debug("index-%d cone -> %d unimodular cones, depth %d",
                 cone_index(cone), len(result), depth)
    return result, depth


def _decompose_into(cone: AffineCone, sign: int, tie_break: str,
                    out: List[SignedCone], depth: int) -> int:
    if cone_index(cone) == 1:
        out.append(SignedCone(cone, sign))
        return depth
    deepest = depth
    for child in signed_decompose_step(cone, tie_break):
        deepest = max(deepest, _decompose_into(child.cone, sign * child.sign, tie_break, out, depth + 1))
    return deepest
