"""Dense univariate polynomials over the rationals.

Coefficients are stored low degree first as a tuple of ``Fraction``.
Everything is exact and immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from math import lcm as ilcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class ZeroPolynomial(ValueError):
    """An operation that needs a nonzero polynomial received zero."""


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        return cls([0] * n + [c])

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; ``-1`` stands in for the degree of the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw(())
            return Poly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.lc
        if len(r) - 1 < db:
            return Poly._raw(()), self
        q = [Fraction(0)] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] -= c * bc[j]
        return Poly._raw(_strip(q)), Poly._raw(_strip(r[:db]))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus and evaluation -----------------------------------------

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def integral(self) -> "Poly":
        """Antiderivative with zero constant term."""
        if not self.coeffs:
            return self
        return Poly._raw((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def shift(self, k: Scalar) -> "Poly":
        """Return ``p(x + k)``."""
        if k == 0 or self.is_constant():
            return self
        step = Poly((k, 1))
        acc = Poly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * step + c
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return Poly._raw(tuple(c * inv for c in self.coeffs))

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.coeffs:
            return Fraction(0)
        nums = reduce(igcd, (c.numerator for c in self.coeffs))
        dens = reduce(ilcm, (c.denominator for c in self.coeffs))
        return Fraction(nums, dens)

    def primitive(self) -> "Poly":
        """Integer-coefficient associate with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return self * (1 / c)

    def trailing_order(self) -> int:
        """Largest k with x^k dividing self (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0


def _coerce(obj):
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Poly.const(obj)
    return None


X = Poly.x()
ONE = Poly.const(1)
ZERO = Poly()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def solve_bezout(a: Poly, b: Poly, c: Poly) -> tuple[Poly, Poly]:
    """Solve s*a + t*b = c with deg s < deg b, assuming gcd(a, b) = 1."""
    g, s, _ = poly_xgcd(a, b)
    if g != ONE:
        raise ArithmeticError("solve_bezout needs coprime inputs")
    s = (s * c) % b
    t = (c - s * a).exact_div(b)
    return s, t


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant of two polynomials via the Euclidean remainder sequence."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    result = Fraction(1)
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return result * b.lc ** m
        if m == 0:
            return result * a.lc ** n
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if (m * n) % 2:
            result = -result
        result *= b.lc ** (m - r.degree)
        a, b = b, r


def interpolate(points: Sequence[tuple[Scalar, Scalar]]) -> Poly:
    """Lagrange interpolation through distinct abscissae."""
    result = ZERO
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = ONE
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * Poly((-xj, 1))
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, sorted, without multiplicity."""
    if p.is_zero():
        raise ZeroPolynomial("rational_roots of the zero polynomial")
    roots = set()
    k = p.trailing_order()
    if k:
        roots.add(Fraction(0))
        p = Poly._raw(p.coeffs[k:])
    if p.degree <= 0:
        return sorted(roots)
    q = p.primitive()
    lead, const = int(q.lc), int(q[0])
    for num in _divisors(const):
        for den in _divisors(lead):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def integer_roots(p: Poly) -> list[int]:
    return [int(r) for r in rational_roots(p) if r.denominator == 1]


def format_poly(p: Poly, var: str = "x") -> str:
    """Canonical text form, highest degree first: ``3*x^2 - 1/2``."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
