"""Rational functions in one variable over the rationals, with derivations.

Two derivations are supported: the usual ``d/dx`` and the Euler derivation
``x*d/dx``.  The module also carries the valuation machinery (orders at
irreducible polynomials), squarefree factorization, Hermite reduction and
the Laurent-polynomial predicate used by the stability deciders.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Optional, Union

from .poly import (
    ONE,
    X,
    ZERO,
    Poly,
    ZeroPolynomial,
    format_poly,
    poly_gcd,
    rational_roots,
    solve_bezout,
)

__all__ = [
    "RatFunc",
    "Derivation",
    "PolyClass",
    "HermiteResult",
    "LaurentData",
    "NonIrreducibleModulus",
    "ZeroPolynomial",
    "derivative",
    "nu",
    "classify_polynomial",
    "squarefree_factorization",
    "hermite_reduce",
    "is_laurent",
    "is_irreducible",
]


class NonIrreducibleModulus(ValueError):
    """Orders are only defined at irreducible polynomials."""


class RatFunc:
    """Quotient ``num/den`` with gcd(num, den) = 1 and monic ``den``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, int, Fraction] = 0, den: Union[Poly, int, Fraction] = 1):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num = num * (1 / lc)
            den = den.monic()
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def x(cls) -> "RatFunc":
        return cls._raw(X, ONE)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c))

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_constant(self) -> bool:
        return self.den == ONE and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        return format_ratfunc(self)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc()
            return RatFunc._raw(self.num * other, self.den)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RatFunc":
        if n >= 0:
            return RatFunc._raw(self.num ** n, self.den ** n) if n else RatFunc.const(1)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return RatFunc(self.den ** (-n), self.num ** (-n))

    def __call__(self, t):
        d = self.den(t)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at {t}")
        return self.num(t) / d

    def diff(self) -> "RatFunc":
        """d/dx."""
        if self.den == ONE:
            return RatFunc._raw(self.num.derivative(), ONE)
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def shift(self, k) -> "RatFunc":
        """Return f(x + k)."""
        return RatFunc._raw(self.num.shift(k), self.den.shift(k))


def _coerce(obj) -> Optional[RatFunc]:
    if isinstance(obj, RatFunc):
        return obj
    if isinstance(obj, Poly):
        return RatFunc._raw(obj, ONE)
    if isinstance(obj, (int, Fraction)):
        return RatFunc.const(obj)
    return None


def _n_terms(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c)


def format_ratfunc(f: RatFunc, var: str = "x") -> str:
    """``(3*x^2 - 1/2)/(x^3 + 1)``; parentheses only around multi-term parts."""
    num_text = format_poly(f.num, var)
    if f.den == ONE:
        return num_text
    if _n_terms(f.num) > 1:
        num_text = f"({num_text})"
    den_text = format_poly(f.den, var)
    if _n_terms(f.den) > 1 or (f.den.degree >= 1 and f.den.lc != 1):
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


# -- derivations ---------------------------------------------------------


class Derivation(enum.Enum):
    DDX = "ddx"
    EULER = "euler"

    @property
    def is_regular(self) -> bool:
        """True when some element x has derivative 1."""
        return self is Derivation.DDX


def derivative(f: RatFunc, d: Derivation = Derivation.DDX) -> RatFunc:
    g = f.diff()
    if d is Derivation.EULER:
        return g * RatFunc.x()
    return g


def poly_derivative(p: Poly, d: Derivation = Derivation.DDX) -> Poly:
    dp = p.derivative()
    return dp * X if d is Derivation.EULER else dp


# -- irreducibility and valuations -------------------------------------


def is_squarefree(p: Poly) -> bool:
    return poly_gcd(p, p.derivative()).is_constant()


def is_irreducible(p: Poly) -> bool:
    """Irreducibility over Q.

    Degrees one to three are settled by the rational root test; higher
    degrees fall back on sympy's factorization over Q.
    """
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    if not is_squarefree(p):
        return False
    if p.degree <= 3:
        return not rational_roots(p)
    import sympy

    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], t, domain="QQ")
    return sp.is_irreducible


def _order_in(q: Poly, p: Poly) -> int:
    k = 0
    while True:
        quo, rem = divmod(q, p)
        if rem:
            return k
        q = quo
        k += 1


def nu(f: RatFunc, p: Poly):
    """Order of f at the irreducible polynomial p; ``math.inf`` for f = 0."""
    if not is_irreducible(p):
        raise NonIrreducibleModulus(f"{p} is not irreducible over Q")
    if f.is_zero():
        return inf
    return _order_in(f.num, p) - _order_in(f.den, p)


class PolyClass(enum.Enum):
    NORMAL = "normal"
    SPECIAL = "special"
    NEITHER = "neither"


def classify_polynomial(p: Poly, d: Derivation = Derivation.DDX) -> PolyClass:
    """Normal when gcd(p, dp) = 1, special when gcd(p, dp) ~ p.

    Nonzero constants satisfy both; they are reported as special.
    """
    if p.is_zero():
        raise ZeroPolynomial("classify_polynomial of zero")
    g = poly_gcd(p, poly_derivative(p, d))
    if g == p.monic():
        return PolyClass.SPECIAL
    if g == ONE:
        return PolyClass.NORMAL
    return PolyClass.NEITHER


def squarefree_factorization(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm; monic nontrivial factors with increasing multiplicity."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree_factorization of zero")
    p = p.monic()
    if p.is_constant():
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


# -- Hermite reduction -------------------------------------------------


@dataclass(frozen=True)
class HermiteResult:
    rational_part: RatFunc
    simple_part: RatFunc


def hermite_reduce(f: RatFunc) -> HermiteResult:
    """Split f = g' + a/b with b squarefree and a/b proper (d/dx)."""
    quo, rem = divmod(f.num, f.den)
    g = RatFunc(quo.integral())
    a, den = rem, f.den
    if a.is_zero():
        return HermiteResult(g, RatFunc())
    for v, mult in squarefree_factorization(den):
        if mult < 2:
            continue
        u = den.exact_div(v ** mult)
        uv_prime = u * v.derivative()
        for j in range(mult - 1, 0, -1):
            b, c = solve_bezout(uv_prime, v, a * Fraction(-1, j))
            g = g + RatFunc(b, v ** j)
            a = -j * c - u * b.derivative()
        den = u * v
    return HermiteResult(g, RatFunc(a, den))


# -- Laurent polynomials ----------------------------------------------


@dataclass(frozen=True)
class LaurentData:
    lowest: int
    coeffs: dict

    def constant_term(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))


def is_laurent(f: RatFunc) -> Optional[LaurentData]:
    """Exponent map when f lies in Q[x, 1/x], otherwise None."""
    den = f.den
    k = den.degree
    if den != Poly.monomial(k):
        return None
    coeffs = {i - k: c for i, c in enumerate(f.num.coeffs) if c}
    lowest = min(coeffs) if coeffs else 0
    return LaurentData(lowest, coeffs)


def laurent(coeffs: dict) -> RatFunc:
    """Build sum c_i x^i from an exponent map with possibly negative keys."""
    if not coeffs:
        return RatFunc()
    low = min(min(coeffs), 0)
    terms = [Fraction(0)] * (max(coeffs) - low + 1)
    for i, c in coeffs.items():
        terms[i - low] += Fraction(c)
    num = Poly(terms)
    return RatFunc(num, Poly.monomial(-low))
