"""Ore operator rings Q(x)<D> and Q(n)<S>.

Differential operators obey ``D*f = f*D + f'`` and shift operators obey
``S*r = r(n+1)*S``.  Coefficients are ``RatFunc`` values; for shift
operators the variable of the rational function is read as ``n``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .poly import ONE, Poly
from .ratfunc import RatFunc, format_ratfunc
from .series import TruncSeries


class Kind(enum.Enum):
    DIFF = "D"
    SHIFT = "S"

    @property
    def var(self) -> str:
        return "x" if self is Kind.DIFF else "n"


class KindMismatch(TypeError):
    pass


class DivisionByZeroOperator(ZeroDivisionError):
    pass


class WindowTooShort(ValueError):
    pass


Coeff = Union[RatFunc, Poly, int, Fraction]


def _rf(c: Coeff) -> RatFunc:
    return c if isinstance(c, RatFunc) else RatFunc(c)


class OreOperator:
    __slots__ = ("kind", "coeffs")

    def __init__(self, kind: Kind, coeffs: Sequence[Coeff]):
        cs = [_rf(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.kind = kind
        self.coeffs = tuple(cs)

    @classmethod
    def generator(cls, kind: Kind) -> "OreOperator":
        return cls(kind, [0, 1])

    @classmethod
    def scalar(cls, kind: Kind, c: Coeff) -> "OreOperator":
        return cls(kind, [c])

    @property
    def order(self) -> int:
        """Order; -1 for the zero operator."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else RatFunc()

    @property
    def degree(self) -> int:
        """Largest polynomial degree among coefficients (after clearing denominators)."""
        p = self.primitive()
        return max((c.num.degree for c in p.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc()

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.kind is other.kind and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.kind, self.coeffs))

    def __repr__(self) -> str:
        return f"OreOperator({self})"

    def __str__(self) -> str:
        return format_operator(self)

    def _check(self, other: "OreOperator") -> None:
        if self.kind is not other.kind:
            raise KindMismatch(f"cannot combine {self.kind.name} and {other.kind.name} operators")

    def __neg__(self) -> "OreOperator":
        return OreOperator(self.kind, [-c for c in self.coeffs])

    def __add__(self, other) -> "OreOperator":
        other = self._lift(other)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OreOperator(self.kind, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "OreOperator":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "OreOperator":
        return self._lift(other) + (-self)

    def __mul__(self, other) -> "OreOperator":
        return multiply(self, self._lift(other))

    def __rmul__(self, other) -> "OreOperator":
        return multiply(self._lift(other), self)

    def __pow__(self, k: int) -> "OreOperator":
        out = OreOperator.scalar(self.kind, 1)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def _lift(self, other) -> "OreOperator":
        if isinstance(other, OreOperator):
            return other
        return OreOperator.scalar(self.kind, _rf(other))

    def scale(self, c: Coeff) -> "OreOperator":
        """Left multiplication by a coefficient."""
        c = _rf(c)
        return OreOperator(self.kind, [c * a for a in self.coeffs])

    def monic(self) -> "OreOperator":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def primitive(self) -> "OreOperator":
        """Left multiple with coprime integer polynomial coefficients.

        The leading coefficient's leading term is made positive.
        """
        if self.is_zero():
            return self
        den = ONE
        for c in self.coeffs:
            den = _poly_lcm(den, c.den)
        polys = [c.num * den.exact_div(c.den) for c in self.coeffs]
        content = Fraction(0)
        for p in polys:
            if p:
                content = _frac_gcd(content, p.content())
        sign = -1 if polys[-1].lc < 0 else 1
        scale = sign / content
        return OreOperator(self.kind, [p * scale for p in polys])

    def normalized(self) -> "OreOperator":
        """Content-normalized form whose leading coefficient has leading term 1."""
        if self.is_zero():
            return self
        p = self.primitive()
        return p.scale(1 / p.lc.num.lc)


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    from .poly import poly_gcd

    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    from math import gcd, lcm

    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))


D = OreOperator.generator(Kind.DIFF)
S = OreOperator.generator(Kind.SHIFT)


def multiply(A: OreOperator, B: OreOperator) -> OreOperator:
    """Noncommutative product A*B."""
    A._check(B)
    if A.is_zero() or B.is_zero():
        return OreOperator(A.kind, [])
    out = [RatFunc()] * (A.order + B.order + 1)
    if A.kind is Kind.SHIFT:
        for i, a in enumerate(A.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(B.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b.shift(i)
        return OreOperator(A.kind, out)
    # D^i * b = sum_k C(i,k) b^(k) D^(i-k)
    for j, b in enumerate(B.coeffs):
        if b.is_zero():
            continue
        derivs = [b]
        for _ in range(A.order):
            derivs.append(derivs[-1].diff())
        for i, a in enumerate(A.coeffs):
            if a.is_zero():
                continue
            for k in range(i + 1):
                if derivs[k]:
                    out[i - k + j] = out[i - k + j] + a * derivs[k] * comb(i, k)
    return OreOperator(A.kind, out)


def _falling(y: int, i: int) -> int:
    out = 1
    for t in range(i):
        out *= y - t
    return out


def apply(L: OreOperator, target, start: int = 0):
    """Act with L on a rational function, a truncated series or a sequence window.

    Differential operators act on ``RatFunc`` and ``TruncSeries``.  On a
    series the result keeps the input length, but only the first
    ``reliable - ord(L)`` coefficients are exact and the result records that.
    Shift operators act on a list of values a_start, a_start+1, ...; the
    result lists P(a)_n for every n whose window fits.
    """
    if L.kind is Kind.DIFF:
        if isinstance(target, TruncSeries):
            return _apply_series(L, target)
        f = _rf(target)
        out = RatFunc()
        for c in L.coeffs:
            if c:
                out = out + c * f
            f = f.diff()
        return out
    values = list(target)
    r = L.order
    if len(values) <= r:
        raise WindowTooShort(f"need more than {r} values, got {len(values)}")
    out = []
    for n in range(len(values) - r):
        idx = start + n
        out.append(sum((c(idx) * values[n + i] for i, c in enumerate(L.coeffs) if c), Fraction(0)))
    return out


def _apply_series(L: OreOperator, s: TruncSeries) -> TruncSeries:
    terms = []
    for i, c in enumerate(L.coeffs):
        if c.is_zero():
            continue
        if not c.is_polynomial():
            raise ValueError("series action needs polynomial coefficients")
        for j, cij in enumerate(c.num.coeffs):
            if cij:
                terms.append((i, j, cij))
    out = []
    for n in range(len(s)):
        acc = Fraction(0)
        for i, j, cij in terms:
            k = n - j + i
            if 0 <= k < len(s):
                acc += cij * _falling(k, i) * s.coeffs[k]
        out.append(acc)
    reliable = max(0, s.reliable - max(L.order, 0))
    return TruncSeries(tuple(out), reliable)


def right_divmod(A: OreOperator, B: OreOperator) -> tuple[OreOperator, OreOperator]:
    """Return (Q, R) with A = Q*B + R and ord R < ord B."""
    A._check(B)
    if B.is_zero():
        raise DivisionByZeroOperator("right division by the zero operator")
    kind = A.kind
    d = B.order
    q = [RatFunc()] * max(A.order - d + 1, 1)
    R = A
    while R.order >= d:
        k = R.order - d
        lead = B.lc.shift(k) if kind is Kind.SHIFT else B.lc
        c = R.lc / lead
        q[k] = q[k] + c
        term = OreOperator(kind, [0] * k + [c])
        R = R - multiply(term, B)
    return OreOperator(kind, q), R


def left_divmod(A: OreOperator, B: OreOperator) -> tuple[OreOperator, OreOperator]:
    """Return (Q, R) with A = B*Q + R and ord R < ord B."""
    A._check(B)
    if B.is_zero():
        raise DivisionByZeroOperator("left division by the zero operator")
    kind = A.kind
    d = B.order
    q = [RatFunc()] * max(A.order - d + 1, 1)
    R = A
    while R.order >= d:
        k = R.order - d
        c = R.lc / B.lc
        if kind is Kind.SHIFT:
            c = c.shift(-d)
        q[k] = q[k] + c
        R = R - multiply(B, OreOperator(kind, [0] * k + [c]))
    return OreOperator(kind, q), R


def gcrd(A: OreOperator, B: OreOperator) -> OreOperator:
    A._check(B)
    if A.is_zero() and B.is_zero():
        raise ValueError("gcrd of two zero operators")
    while not B.is_zero():
        A, B = B, right_divmod(A, B)[1]
    return A.monic()


def lclm(A: OreOperator, B: OreOperator) -> OreOperator:
    """Least common left multiple via the extended right Euclidean scheme."""
    A._check(B)
    if A.is_zero() or B.is_zero():
        raise ValueError("lclm with a zero operator")
    kind = A.kind
    one = OreOperator.scalar(kind, 1)
    zero = OreOperator(kind, [])
    r0, r1 = A, B
    s0, s1 = one, zero
    while not r1.is_zero():
        q, r = right_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - multiply(q, s1)
    return multiply(s1, A).monic()


def format_operator(L: OreOperator) -> str:
    """Text form accepted by the operator parser, e.g. ``x*D^2 + (x^2 + 1)*D - 3``."""
    if L.is_zero():
        return "0"
    var, gen = L.kind.var, L.kind.value
    pieces = []
    for i in range(L.order, -1, -1):
        c = L.coeffs[i]
        if c.is_zero():
            continue
        ctext = format_ratfunc(c, var)
        sign = "+"
        if c.is_polynomial() and sum(1 for a in c.num.coeffs if a) == 1:
            if ctext.startswith("-"):
                sign, ctext = "-", ctext[1:]
        elif i > 0:
            ctext = f"({ctext})"
        elif ctext.startswith("-"):
            # a + (-u + v) prints as a - u + v
            sign, ctext = "-", ctext[1:]
        mono = "" if i == 0 else (gen if i == 1 else f"{gen}^{i}")
        if not mono:
            body = ctext
        elif ctext == "1":
            body = mono
        else:
            body = f"{ctext}*{mono}"
        pieces.append((sign, body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def left_factor_identity(m: int) -> tuple[OreOperator, Fraction]:
    """Operator L and constant c with x^(m-1)*D^(m-1) = D*L + c.

    The constant comes out as (-1)^(m-1) * (m-1)!.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    A = OreOperator(Kind.DIFF, [0] * (m - 1) + [RatFunc.x() ** (m - 1)])
    L, R = left_divmod(A, D)
    if R.order > 0 or not R.lc.is_constant():
        raise ArithmeticError("remainder is not a constant")
    return L, R.lc.constant_value() if R.coeffs else Fraction(0)
