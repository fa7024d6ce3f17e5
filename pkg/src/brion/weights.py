"""
Polynomial weights h(x, y) with exact rational coefficients.
"""

from __future__ import annotations

import re
import tokenize
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from src.errors import InputError
from src.geometry.primitives import format_rational

Exponent = Tuple[int, int]

_ALLOWED = re.compile(r"^[0-9xy+\-*/^() \t]*$")
_X, _Y = sympy.symbols("x y")


@dataclass(frozen=True)
class Weight:
    """h = sum h_m x^m1 y^m2, terms sorted by exponent, zero terms dropped"""
    terms: Tuple[Tuple[Exponent, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, Fraction]) -> Weight:
        for m1, m2 in terms:
            if m1 < 0 or m2 < 0:
                raise InputError(f"negative exponent in x^{m1}*y^{m2}")
        return cls(tuple(sorted((m, Fraction(c)) for m, c in terms.items() if c != 0)))

    @classmethod
    def monomial(cls, m1: int, m2: int) -> Weight:
        return cls.from_terms({(m1, m2): Fraction(1)})

    def as_dict(self) -> Dict[Exponent, Fraction]:
        return dict(self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((m1 + m2 for (m1, m2), _ in self.terms), default=0)

    def monomials(self) -> List[Exponent]:
        return [m for m, _ in self.terms]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    def evaluate(self, x, y) -> Fraction:
        return sum((c * Fraction(x) ** m1 * Fraction(y) ** m2 for (m1, m2), c in self.terms),
                   Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (m1, m2), c in sorted(self.terms, key=lambda mc: (-(mc[0][0] + mc[0][1]), mc[0])):
            factors = [f"x^{m1}" if m1 > 1 else "x"] if m1 else []
            factors += [f"y^{m2}" if m2 > 1 else "y"] if m2 else []
            if not factors:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(abs(c))] + factors)
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def parse_weight(expression: str) -> Weight:
    """
    Parse "x^32*y^32 + 7"-style input into an exact Weight.

    Only x, y, integers and + - * / ^ ( ) are accepted; the result must be a
    polynomial in x, y with rational coefficients.
    """
    if not _ALLOWED.match(expression) or not expression.strip():
        raise InputError(f"unsupported polynomial expression {expression!r}")
    try:
        expr = parse_expr(expression, local_dict={"x": _X, "y": _Y},
                          transformations=standard_transformations + (convert_xor,))
        poly = sympy.Poly(expr, _X, _Y)
    except (sympy.SympifyError, sympy.PolynomialError, tokenize.TokenError,
            SyntaxError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse polynomial {expression!r}: {e}") from e
    if not (poly.domain.is_ZZ or poly.domain.is_QQ):
        raise InputError(f"polynomial {expression!r} must have rational coefficients")

    terms: Dict[Exponent, Fraction] = {}
    for (m1, m2), c in poly.terms():
        c = sympy.Rational(c)
        terms[(int(m1), int(m2))] = Fraction(int(c.p), int(c.q))
    return Weight.from_terms(terms)
