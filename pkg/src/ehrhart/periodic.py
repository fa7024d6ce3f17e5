"""
Periodic coefficients of weighted Ehrhart quasi-polynomials.

A PeriodicSymbol fmod(p*t, q) stands for t -> p*t mod q in [0, q).  A
PeriodicPolynomial is an element of QQ[symbols], a sympy sparse polynomial
ring with one generator per canonical symbol.  Generators that no term uses
are dropped, so structural equality is meaningful for identical inputs.
Two different canonical forms can still describe the same function
(fmod(t, 2)^2 == fmod(t, 2) as functions); comparisons between
independently built values go through evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, List, Optional, Tuple

from sympy import QQ, Symbol
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from src.errors import IndexOutOfRange, InputError
from src.geometry.primitives import format_rational, to_rational

SymbolKey = Tuple[int, int]  # (q, p)
Monomial = Tuple[Tuple[SymbolKey, int], ...]  # (((q, p), exponent), ...)


@dataclass(frozen=True, order=True)
class PeriodicSymbol:
    """fmod(p*t, q), with 0 < p < q"""
    q: int
    p: int

    def value(self, t: int) -> int:
        return (self.p * t) % self.q

    def __str__(self) -> str:
        factor = "t" if self.p == 1 else f"{self.p}*t"
        return f"fmod({factor}, {self.q})"


@lru_cache(maxsize=None)
def symbol_ring(keys: Tuple[SymbolKey, ...]) -> PolyRing:
    """QQ[fmod(p*t, q) for (q, p) in keys]"""
    return PolyRing([Symbol(f"fmod_{p}t_{q}") for q, p in keys], QQ, lex)


def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _reindex(element: PolyElement, keys: Tuple[SymbolKey, ...],
             target: Tuple[SymbolKey, ...]) -> PolyElement:
    """Same polynomial over symbol_ring(target); target holds every key in use"""
    if keys == target:
        return element
    position = {key: i for i, key in enumerate(target)}
    out = {}
    for monom, c in element.items():
        exponents = [0] * len(target)
        for key, e in zip(keys, monom):
            if e:
                exponents[position[key]] = e
        out[tuple(exponents)] = c
    return symbol_ring(target).from_dict(out)


def _monomial_str(monomial: Monomial) -> str:
    parts = []
    for (q, p), exponent in monomial:
        text = str(PeriodicSymbol(q, p))
        parts.append(text if exponent == 1 else f"{text}^{exponent}")
    return "*".join(parts)


@dataclass(frozen=True, eq=False)
class PeriodicPolynomial:
    """Polynomial in fmod symbols with rational coefficients"""
    symbol_keys: Tuple[SymbolKey, ...] = ()
    element: Optional[PolyElement] = None

    def __post_init__(self):
        keys = tuple(self.symbol_keys)
        element = self.element if self.element is not None else symbol_ring(keys).zero
        used = tuple(sorted(k for i, k in enumerate(keys) if any(m[i] for m in element.keys())))
        object.__setattr__(self, "element", _reindex(element, keys, used))
        object.__setattr__(self, "symbol_keys", used)

    @classmethod
    def from_dict(cls, terms: Dict[Monomial, Fraction]) -> PeriodicPolynomial:
        keys = tuple(sorted({key for m in terms for key, _ in m}))
        position = {key: i for i, key in enumerate(keys)}
        out = {}
        for m, c in terms.items():
            exponents = [0] * len(keys)
            for key, e in m:
                exponents[position[key]] += e
            monom = tuple(exponents)
            out[monom] = out.get(monom, QQ.zero) + to_qq(c)
        return cls(keys, symbol_ring(keys).from_dict(out))

    @classmethod
    def constant(cls, value) -> PeriodicPolynomial:
        return cls((), symbol_ring(()).ground_new(to_qq(value)))

    @classmethod
    def symbol(cls, p: int, q: int) -> PeriodicPolynomial:
        """fmod(p*t, q), canonicalised: p reduced mod q, q = 1 or p = 0 give zero"""
        if q <= 0:
            raise ValueError("modulus must be positive")
        p %= q
        if q == 1 or p == 0:
            return cls()
        keys = ((q, p),)
        return cls(keys, symbol_ring(keys).gens[0])

    @classmethod
    def fractional_dilation(cls, s) -> PeriodicPolynomial:
        """ceil(t*s) - t*s as a function of t, i.e. fmod(-p*t, q)/q for s = p/q"""
        s = Fraction(s)
        return cls.symbol(-s.numerator, s.denominator) / s.denominator

    @classmethod
    def coerce(cls, value) -> PeriodicPolynomial:
        if isinstance(value, PeriodicPolynomial):
            return value
        return cls.constant(value)

    def _aligned(self, other: PeriodicPolynomial):
        keys = tuple(sorted(set(self.symbol_keys) | set(other.symbol_keys)))
        return (keys, _reindex(self.element, self.symbol_keys, keys),
                _reindex(other.element, other.symbol_keys, keys))

    def __add__(self, other) -> PeriodicPolynomial:
        keys, a, b = self._aligned(PeriodicPolynomial.coerce(other))
        return PeriodicPolynomial(keys, a + b)

    __radd__ = __add__

    def __neg__(self) -> PeriodicPolynomial:
        return PeriodicPolynomial(self.symbol_keys, -self.element)

    def __sub__(self, other) -> PeriodicPolynomial:
        keys, a, b = self._aligned(PeriodicPolynomial.coerce(other))
        return PeriodicPolynomial(keys, a - b)

    def __rsub__(self, other) -> PeriodicPolynomial:
        return PeriodicPolynomial.coerce(other) - self

    def __mul__(self, other) -> PeriodicPolynomial:
        if not isinstance(other, PeriodicPolynomial):
            return PeriodicPolynomial(self.symbol_keys, self.element.mul_ground(to_qq(other)))
        keys, a, b = self._aligned(other)
        return PeriodicPolynomial(keys, a * b)

    __rmul__ = __mul__

    def __truediv__(self, other) -> PeriodicPolynomial:
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> PeriodicPolynomial:
        if n < 0:
            raise ValueError("periodic polynomials have no inverses")
        return PeriodicPolynomial(self.symbol_keys, self.element ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PeriodicPolynomial.constant(other)
        if not isinstance(other, PeriodicPolynomial):
            return NotImplemented
        return self.symbol_keys == other.symbol_keys and self.element == other.element

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.element)

    @cached_property
    def terms(self) -> Tuple[Tuple[Monomial, Fraction], ...]:
        """Sorted (monomial, coefficient) pairs"""
        out = []
        for monom, c in self.element.items():
            m = tuple((key, e) for key, e in zip(self.symbol_keys, monom) if e)
            out.append((m, from_qq(c)))
        return tuple(sorted(out))

    def symbols(self) -> List[PeriodicSymbol]:
        return [PeriodicSymbol(q, p) for q, p in self.symbol_keys]

    def is_constant(self) -> bool:
        return not self.symbol_keys

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on t")
        return from_qq(self.element.get((), QQ.zero))

    @property
    def period(self) -> int:
        return math.lcm(1, *(q for q, _ in self.symbol_keys))

    def evaluate(self, t: int) -> Fraction:
        if self.is_constant():
            return self.constant_value()
        ring = self.element.ring
        point = [(gen, (p * t) % q) for gen, (q, p) in zip(ring.gens, self.symbol_keys)]
        return from_qq(self.element.evaluate(point))

    def equivalent(self, other: PeriodicPolynomial) -> bool:
        """Same function of t (checked on one full common period)"""
        other = PeriodicPolynomial.coerce(other)
        period = math.lcm(self.period, other.period)
        return all(self.evaluate(t) == other.evaluate(t) for t in range(period))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))
        pieces = []
        for m, c in ordered:
            if m == ():
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = _monomial_str(m)
            else:
                body = f"{format_rational(abs(c))}*{_monomial_str(m)}"
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {
                "coeff": format_rational(c),
                "symbols": [{"p": p, "q": q, "exp": e} for (q, p), e in m],
            }
            for m, c in self.terms
        ]

    @classmethod
    def from_json(cls, terms: Iterable[Dict[str, Any]]) -> PeriodicPolynomial:
        total = cls()
        for term in terms:
            value = cls.constant(to_rational(term["coeff"]))
            for symbol in term.get("symbols", []):
                value = value * cls.symbol(int(symbol["p"]), int(symbol["q"])) ** int(symbol["exp"])
            total = total + value
        return total


@dataclass(frozen=True)
class QuasiPolynomial:
    """sum_i E_i(t) t^i with periodic coefficients E_i"""
    coefficients: Tuple[PeriodicPolynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def period(self) -> int:
        q = 1
        for c in self.coefficients:
            q = math.lcm(q, c.period)
        return q

    def coefficient(self, i: int) -> PeriodicPolynomial:
        if not 0 <= i <= self.degree:
            raise IndexOutOfRange(f"coefficient index {i} outside 0..{self.degree}")
        return self.coefficients[i]

    def is_polynomial(self) -> bool:
        return all(c.is_constant() for c in self.coefficients)

    def evaluate(self, t: int) -> Fraction:
        if t < 0:
            raise ValueError("quasi-polynomials are evaluated at t >= 0")
        total = Fraction(0)
        for i, c in enumerate(self.coefficients):
            total += c.evaluate(t) * t ** i
        return total

    def equivalent(self, other: QuasiPolynomial) -> bool:
        """Coefficient-wise agreement over one full period"""
        n = max(len(self.coefficients), len(other.coefficients))
        zero = PeriodicPolynomial()
        for i in range(n):
            a = self.coefficients[i] if i < len(self.coefficients) else zero
            b = other.coefficients[i] if i < len(other.coefficients) else zero
            if not a.equivalent(b):
                return False
        return True

    def __str__(self) -> str:
        pieces = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            power = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if c.is_constant():
                value = c.constant_value()
                if i == 0:
                    body = format_rational(abs(value))
                elif abs(value) == 1:
                    body = power
                else:
                    body = f"{format_rational(abs(value))}*{power}"
                pieces.append(("-" if value < 0 else "+", body))
            else:
                body = f"({c})" if i > 0 else str(c)
                if i > 0:
                    body += f"*{power}"
                pieces.append(("+", body))
        if not pieces:
            return "0"
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_dict(self) -> Dict[str, Any]:
        """Structured form for JSON output"""
        return {
            "degree": self.degree,
            "coefficients": [
                {"power": i, "terms": c.to_json()} for i, c in enumerate(self.coefficients)
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> QuasiPolynomial:
        try:
            degree = int(data["degree"])
            coefficients = [PeriodicPolynomial() for _ in range(degree + 1)]
            for entry in data["coefficients"]:
                coefficients[int(entry["power"])] = PeriodicPolynomial.from_json(entry["terms"])
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise InputError(f"malformed quasi-polynomial: {e}") from e
        return cls(tuple(coefficients))
