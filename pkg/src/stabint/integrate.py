"""Integrability deciders over Q(x).

Covers integration inside the field, the Liouville-Hardy test for
``f*log(x)``, the differential-reduced predicate, and the polynomial
Risch-type equation ``P = b*Q' + (a + (m+1)*b')*Q`` that governs
``P*b^m*exp(g)`` with ``g' = a/b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import ONE, X, ZERO, Poly, integer_roots, interpolate, poly_gcd, resultant
from .ratfunc import Derivation, RatFunc, hermite_reduce, squarefree_factorization


class PreconditionViolated(ValueError):
    pass


class Unsupported(Exception):
    """The input lies outside the shapes this module can decide."""


class ZeroGPrime(ValueError):
    pass


def integrable_in_field(f: RatFunc, d: Derivation = Derivation.DDX) -> Optional[RatFunc]:
    """Return g with d(g) = f when one exists in Q(x), else None."""
    if d is Derivation.EULER:
        return integrable_in_field(f / RatFunc.x(), Derivation.DDX)
    h = hermite_reduce(f)
    if h.simple_part.is_zero():
        return h.rational_part
    return None


@dataclass(frozen=True)
class LHResult:
    """f = c/x + g'."""

    c: Fraction
    g: RatFunc


def liouville_hardy(f: RatFunc) -> Optional[LHResult]:
    h = hermite_reduce(f)
    s = h.simple_part
    if s.is_zero():
        return LHResult(Fraction(0), h.rational_part)
    if s.den == X and s.num.degree == 0:
        return LHResult(s.num[0], h.rational_part)
    return None


def residue_polynomial(f: RatFunc) -> Poly:
    """Res_x(b, a - z*b') as a polynomial in z, for f = a/b."""
    a, b = f.num, f.den
    db = b.derivative()
    pts = [(z, resultant(b, a - db * z)) for z in range(b.degree + 1)]
    return interpolate(pts)


def is_differential_reduced(f: RatFunc) -> bool:
    """True iff gcd(b, a - i*b') = 1 for every integer i."""
    if f.den.is_constant():
        return True
    r = residue_polynomial(f)
    if r.is_zero():
        return False
    return not integer_roots(r)


@dataclass(frozen=True)
class RischSolution:
    Q: Poly
    m: int
    a: Poly
    b: Poly
    P: Poly

    def verify(self) -> bool:
        lhs = self.b * self.Q.derivative() + (self.a + self.b.derivative() * (self.m + 1)) * self.Q
        return lhs == self.P


def risch_degree_bound(P: Poly, a: Poly, b: Poly) -> int:
    if a.degree >= b.degree:
        return P.degree - a.degree
    return P.degree - b.degree + 1


def risch_de_poly(P: Poly, a: Poly, b: Poly, m: int) -> Optional[RischSolution]:
    """Polynomial Q with P = b*Q' + (a + (m+1)*b')*Q, or None.

    a/b must be the derivative of a rational function and gcd(a, b) = 1.
    """
    if m < 0:
        raise PreconditionViolated("m must be nonnegative")
    if b.is_zero():
        raise PreconditionViolated("b must be nonzero")
    if not poly_gcd(a, b).is_constant():
        raise PreconditionViolated("gcd(a, b) must be 1")
    if integrable_in_field(RatFunc(a, b)) is None:
        raise PreconditionViolated(f"{RatFunc(a, b)} is not a derivative in Q(x)")
    if P.is_zero():
        return RischSolution(ZERO, m, a, b, P)
    k = risch_degree_bound(P, a, b)
    if k < 0:
        return None
    c = a + b.derivative() * (m + 1)
    images = []
    for j in range(k + 1):
        xj = Poly.monomial(j)
        images.append(b * xj.derivative() + c * xj)
    shift = max(c.degree, b.degree - 1)
    q = [Fraction(0)] * (k + 1)
    R = P
    for j in range(k, -1, -1):
        img = images[j]
        lead = img[j + shift]
        if lead == 0:
            # only the constant in Q' = P (a = 0, b constant) has a zero image
            if not img.is_zero():
                raise ArithmeticError("unexpected triangular structure")
            continue
        q[j] = R[j + shift] / lead
        if q[j]:
            R = R - img * q[j]
    if R:
        return None
    return RischSolution(Poly(q), m, a, b, P)


def _solve_constant_regime(f: RatFunc, lam: Fraction) -> Optional[RatFunc]:
    """Rational h with h' + lam*h = f."""
    sqf = squarefree_factorization(f.den)
    if any(mult == 1 for _, mult in sqf):
        return None
    E = ONE
    for v, mult in sqf:
        E = E * v ** (mult - 1)
    deg_n = E.degree + f.num.degree - f.den.degree
    if deg_n < 0:
        return None
    rhs = (f * RatFunc(E * E)).num
    dE = E.derivative()
    q = [Fraction(0)] * (deg_n + 1)
    R = rhs
    top = E.degree
    for j in range(deg_n, -1, -1):
        xj = Poly.monomial(j)
        img = xj.derivative() * E - xj * dE + xj * E * lam
        q[j] = R[j + top] / img[j + top]
        if q[j]:
            R = R - img * q[j]
    if R:
        return None
    return RatFunc(Poly(q), E)


def fexpg_solve(f: RatFunc, gprime: RatFunc) -> Optional[RatFunc]:
    """Rational h with f = h' + h*gprime, or None when none exists.

    Decided when gprime is a nonzero constant, or when f is a polynomial
    and gprime is itself a derivative in Q(x).  Other shapes raise
    ``Unsupported``.
    """
    if gprime.is_zero():
        raise ZeroGPrime("gprime must be nonzero")
    if f.is_zero():
        return RatFunc()
    if gprime.is_constant():
        return _solve_constant_regime(f, gprime.constant_value())
    if not f.is_polynomial():
        raise Unsupported("non-polynomial f with a nonconstant exponent derivative")
    if integrable_in_field(gprime) is None:
        raise Unsupported(f"{gprime} is not the derivative of a rational function")
    a, b = gprime.num, gprime.den
    P, m = f.num, 0
    if not b.is_constant():
        while True:
            quo, rem = divmod(P, b)
            if rem:
                break
            P, m = quo, m + 1
    sol = risch_de_poly(P, a, b, m)
    if sol is None:
        return None
    return RatFunc(sol.Q * b ** (m + 1))


def skolem_scan(f: RatFunc, g: RatFunc, N: int) -> list[int]:
    """Indices i in [0, N] with x^i*f*exp(g) elementary integrable."""
    gprime = g.diff()
    if gprime.is_zero():
        raise ZeroGPrime("exp(g) needs a nonconstant g")
    x = RatFunc.x()
    out = []
    term = f
    for i in range(N + 1):
        if fexpg_solve(term, gprime) is not None:
            out.append(i)
        term = term * x
    return out
