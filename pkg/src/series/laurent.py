"""
Truncated bivariate iterated Laurent series in (xi1, xi2).

Expansions are iterated with xi2 as the outer variable: 1/(a xi1 + b xi2)
is expanded as a series in xi1/xi2 whenever b != 0.  The same choice is
made everywhere, so coefficients of different cones can be added and their
poles cancel term by term.

Coefficients live in any commutative ring containing the rationals:
``Fraction`` for lattice sums, ``PeriodicPolynomial`` for Ehrhart
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple

from config import SERIES_CONFIG
from src.errors import OrderExceeded, ZeroVector
from src.series.bernoulli import b_coefficients

Exponent = Tuple[int, int]


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class TruncatedLaurent:
    """
    Finite map (e1, e2) -> coefficient; only total degrees <= order are
    meaningful and stored
    """
    coefficients: Mapping[Exponent, Any] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        cleaned = {e: c for e, c in self.coefficients.items()
                   if e[0] + e[1] <= self.order and not _is_zero(c)}
        object.__setattr__(self, "coefficients", cleaned)

    def coefficient(self, e1: int, e2: int):
        if e1 + e2 > self.order:
            raise OrderExceeded(f"xi1^{e1} xi2^{e2} is beyond truncation order {self.order}")
        return self.coefficients.get((e1, e2), 0)

    def items(self) -> Iterator[Tuple[Exponent, Any]]:
        return iter(sorted(self.coefficients.items()))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: TruncatedLaurent) -> TruncatedLaurent:
        order = min(self.order, other.order)
        out: Dict[Exponent, Any] = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedLaurent(out, order)

    def __neg__(self) -> TruncatedLaurent:
        return TruncatedLaurent({e: -c for e, c in self.coefficients.items()}, self.order)

    def __sub__(self, other: TruncatedLaurent) -> TruncatedLaurent:
        return self + (-other)

    def scale(self, k) -> TruncatedLaurent:
        return TruncatedLaurent({e: c * k for e, c in self.coefficients.items()}, self.order)

    def truncate(self, order: int, max_e1: int = None) -> TruncatedLaurent:
        """Drop total degrees above ``order`` and, optionally, xi1-exponents above ``max_e1``"""
        kept = {e: c for e, c in self.coefficients.items()
                if max_e1 is None or e[0] <= max_e1}
        return TruncatedLaurent(kept, min(order, self.order))

    def negative_part(self) -> Dict[Exponent, Any]:
        """Stored terms with a negative exponent"""
        return {e: c for e, c in self.coefficients.items() if e[0] < 0 or e[1] < 0}

    def is_analytic(self) -> bool:
        return not self.negative_part()

    @classmethod
    def constant(cls, value, order: int) -> TruncatedLaurent:
        return cls({(0, 0): value}, order)


def multiply(a: TruncatedLaurent, b: TruncatedLaurent) -> TruncatedLaurent:
    """Cauchy product, keeping total degree <= min(a.order, b.order)"""
    order = min(a.order, b.order)
    out: Dict[Exponent, Any] = {}
    b_items = list(b.coefficients.items())
    for (i1, i2), ca in a.coefficients.items():
        for (j1, j2), cb in b_items:
            if i1 + i2 + j1 + j2 > order:
                continue
            e = (i1 + j1, i2 + j2)
            term = ca * cb
            out[e] = out[e] + term if e in out else term
    return TruncatedLaurent(out, order)


def linear_form_powers(a, b, order: int, max_e1: int = None) -> List[List[Any]]:
    """
    rows[n][j] = coefficient of xi1^j xi2^(n-j) in (a xi1 + b xi2)^n for
    n = 0..order and j <= max_e1
    """
    cap = order if max_e1 is None else max_e1
    rows: List[List[Any]] = [[1]]
    for n in range(1, order + 1):
        prev = rows[-1]
        width = min(n, cap) + 1
        row = []
        for j in range(width):
            c = 0
            if j < len(prev):
                c += b * prev[j]
            if 0 < j <= len(prev):
                c += a * prev[j - 1]
            row.append(c)
        rows.append(row)
    return rows


def compose_linear(coefficients: Sequence[Any], a, b, order: int) -> TruncatedLaurent:
    """sum_n coefficients[n] (a xi1 + b xi2)^n truncated at total degree ``order``"""
    top = min(order, len(coefficients) - 1)
    rows = linear_form_powers(a, b, top)
    out: Dict[Exponent, Any] = {}
    for n in range(top + 1):
        cn = coefficients[n]
        if _is_zero(cn):
            continue
        for j, p in enumerate(rows[n]):
            if p:
                out[(j, n - j)] = cn * p
    return TruncatedLaurent(out, order)


def linear_form(v, order: int) -> TruncatedLaurent:
    """<xi, v> = v.x xi1 + v.y xi2 as a degree-1 series"""
    return TruncatedLaurent({(1, 0): v.x, (0, 1): v.y}, order)


def inverse_linear_form(v, order: int, slack: int = None) -> TruncatedLaurent:
    """
    Iterated expansion of 1 / <xi, v>.

    For v.y != 0:  (1/(v.y xi2)) sum_k (-v.x/v.y)^k (xi1/xi2)^k, keeping
    k <= order + slack so that products with analytic series of order
    order + slack are exact through total degree ``order``.
    For v.y == 0:  (1/v.x) xi1^-1.
    """
    if slack is None:
        slack = SERIES_CONFIG["slack"]
    vx, vy = Fraction(v.x), Fraction(v.y)
    if vx == 0 and vy == 0:
        raise ZeroVector("inverse of the zero linear form")
    if vy == 0:
        return TruncatedLaurent({(-1, 0): 1 / vx}, order)
    ratio = -vx / vy
    out: Dict[Exponent, Any] = {}
    term = 1 / vy
    for k in range(order + slack + 1):
        out[(k, -1 - k)] = term
        term *= ratio
    return TruncatedLaurent(out, order)


def b_series(u, v, order: int) -> TruncatedLaurent:
    """B(<xi, v>, u) truncated at total degree ``order``; v may be rational"""
    if v.x == 0 and v.y == 0:
        raise ZeroVector("B-series of the zero linear form")
    return compose_linear(b_coefficients(u, order), v.x, v.y, order)


def substitute_basis(series: TruncatedLaurent, v1, v2) -> TruncatedLaurent:
    """
    Rewrite an analytic series in (y1, y2) as a series in (xi1, xi2) under
    y1 = <xi, v1>, y2 = <xi, v2>
    """
    order = series.order
    p1 = linear_form_powers(v1.x, v1.y, order)
    p2 = linear_form_powers(v2.x, v2.y, order)
    out: Dict[Exponent, Any] = {}
    for (n1, n2), c in series.coefficients.items():
        if n1 < 0 or n2 < 0:
            raise ValueError("substitute_basis only handles analytic series")
        for j1, c1 in enumerate(p1[n1]):
            if not c1:
                continue
            for j2, c2 in enumerate(p2[n2]):
                if not c2:
                    continue
                e = (j1 + j2, n1 + n2 - j1 - j2)
                term = c * (c1 * c2)
                out[e] = out[e] + term if e in out else term
    return TruncatedLaurent(out, order)


def factorial_weight(m1: int, m2: int) -> int:
    """m1! m2!, turning a Taylor coefficient into a moment"""
    return math.factorial(m1) * math.factorial(m2)
