"""
Bernoulli numbers, Bernoulli polynomials and the coefficient sequence of

    B(X, u) = e^{uX} / (1 - e^X) + 1/X = - sum_{n>=0} b(n+1, u) / (n+1)! X^n

where b(n, u) are the Bernoulli polynomials of t e^{ut} / (e^t - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Tuple

__all__ = [
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "bernoulli_values",
    "BernoulliSeries",
    "b_coefficients",
]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> Tuple[Fraction, ...]:
    # Akiyama-Tanigawa yields the B1 = +1/2 convention
    a = [Fraction(0)] * (n + 1)
    out: List[Fraction] = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_numbers(n: int) -> List[Fraction]:
    """B_0..B_n with B_1 = -1/2, i.e. b(k, 0)"""
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(_bernoulli_table(n))


@lru_cache(maxsize=256)
def _polynomial(n: int) -> Tuple[Fraction, ...]:
    numbers = _bernoulli_table(n)
    # coefficient of u^i is C(n, i) B_{n-i}
    return tuple(math.comb(n, i) * numbers[n - i] for i in range(n + 1))


def bernoulli_polynomial(n: int) -> List[Fraction]:
    """Coefficients of b(n, u), index = power of u"""
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(_polynomial(n))


@lru_cache(maxsize=None)
def _scaled_table(count: int) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    """
    Common denominator L of B_0..B_count and the integers C(k, j) B_j L,
    so that rational evaluation runs on integers.
    """
    numbers = _bernoulli_table(count)
    lcm = 1
    for b in numbers:
        lcm = math.lcm(lcm, b.denominator)
    rows = []
    for k in range(count + 1):
        rows.append(tuple(int(math.comb(k, j) * numbers[j] * lcm) for j in range(k + 1)))
    return lcm, tuple(rows)


def bernoulli_values(u: Any, count: int) -> List[Any]:
    """
    [b(0, u), ..., b(count, u)].

    ``u`` is either an exact rational or an element of a commutative ring
    containing the rationals (PeriodicPolynomial); the latter goes through
    Horner's rule.
    """
    if isinstance(u, (int, Fraction)):
        return _rational_values(Fraction(u), count)
    values = []
    for k in range(count + 1):
        coefficients = _polynomial(k)
        acc = u * 0 + coefficients[k]
        for c in reversed(coefficients[:k]):
            acc = acc * u + c
        values.append(acc)
    return values


def _rational_values(u: Fraction, count: int) -> List[Fraction]:
    lcm, rows = _scaled_table(count)
    p, q = u.numerator, u.denominator
    p_pow = [1]
    q_pow = [1]
    for _ in range(count):
        p_pow.append(p_pow[-1] * p)
        q_pow.append(q_pow[-1] * q)
    values = []
    for k in range(count + 1):
        row = rows[k]
        # b(k,u) q^k L = sum_j C(k,j) B_j L p^(k-j) q^j ; odd B_j vanish for j >= 3
        total = 0
        for j in range(k + 1):
            if row[j]:
                total += row[j] * p_pow[k - j] * q_pow[j]
        values.append(Fraction(total, q_pow[k] * lcm))
    return values


@lru_cache(maxsize=4096)
def b_coefficients(u: Any, order: int) -> Tuple[Any, ...]:
    """Coefficients of X^0..X^order in B(X, u): -b(n+1, u) / (n+1)!"""
    values = bernoulli_values(u, order + 1)
    return tuple(-values[n + 1] / math.factorial(n + 1) for n in range(order + 1))


@dataclass(frozen=True)
class BernoulliSeries:
    """B(X, u) truncated at X^order"""
    u: Any
    order: int

    @property
    def coefficients(self) -> Tuple[Any, ...]:
        return b_coefficients(self.u, self.order)

    def __getitem__(self, n: int):
        return self.coefficients[n]
