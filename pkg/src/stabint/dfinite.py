"""D-finite series and P-recursive sequences.

Differential operators are ``OreOperator`` values of kind DIFF with
polynomial coefficients in x; recurrences ("sequence rules") are kind
SHIFT operators in n, read as ``sum p_i(n) a_(n+i) = 0`` for all n >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .integrate import Unsupported, fexpg_solve
from .linalg import nullspace
from .ore import Kind, OreOperator, apply
from .poly import X, Poly
from .ratfunc import RatFunc
from .series import TruncSeries, exp_series, geom_series, poly_series

HOLDOUT = 5
SequenceRule = OreOperator


class ZeroOperator(ValueError):
    pass


class InsufficientTruncation(ValueError):
    pass


class NoAnnihilatorFound(ValueError):
    pass


class NoCertificateWithinLimits(ValueError):
    def __init__(self, message: str, profile: Sequence[Optional[int]]):
        super().__init__(f"{message}; order profile {list(profile)}")
        self.profile = list(profile)


def _falling_poly(shift: int, i: int) -> Poly:
    """(N+shift)(N+shift-1)...(N+shift-i+1) as a polynomial in N."""
    out = Poly.const(1)
    for t in range(i):
        out = out * (X + (shift - t))
    return out


def _require_polynomial(L: OreOperator) -> None:
    if any(not c.is_polynomial() for c in L.coeffs):
        raise ValueError("operator coefficients must be polynomials")


def annihilates(P: SequenceRule, values: Sequence, start: int = 0) -> bool:
    """True iff P(a)_n = 0 for every n whose window fits in ``values``."""
    if P.order >= len(values):
        return True
    return all(v == 0 for v in apply(P, values, start))


# -- conversions --------------------------------------------------------


def diff_to_rec(L: OreOperator) -> SequenceRule:
    """Recurrence satisfied by the coefficients of every power-series solution of L."""
    if L.is_zero():
        raise ZeroOperator("the zero operator annihilates everything")
    if L.kind is not Kind.DIFF:
        raise TypeError("expected a differential operator")
    _require_polynomial(L)
    terms = []
    for i, c in enumerate(L.coeffs):
        for j, cij in enumerate(c.num.coeffs):
            if cij:
                terms.append((i, j, cij))
    offset = min(0, min(i - j for i, j, _ in terms))
    rule: dict = {}
    for i, j, cij in terms:
        s = i - j
        # coefficient of x^n in x^j f^(i) is ff(n-j+i, i) a_(n-j+i), with n = N - offset
        rule[s - offset] = rule.get(s - offset, Poly()) + _falling_poly(s - offset, i) * cij
    coeffs = [rule.get(k, Poly()) for k in range(max(rule) + 1)]
    return OreOperator(Kind.SHIFT, coeffs).primitive()


def formal_integral(s: TruncSeries) -> TruncSeries:
    out = [Fraction(0)] + [s.coeffs[n - 1] / n for n in range(1, len(s) + 1)]
    return TruncSeries(tuple(out), s.reliable + 1)


def integral_rec(P: SequenceRule) -> SequenceRule:
    """Annihilator of b_n = a_(n-1)/n (b_0 = 0) for every a_n annihilated by P."""
    if P.is_zero():
        raise ZeroOperator("the zero recurrence")
    # a_n = (n+1) b_(n+1); substitute and shift n -> n-1
    coeffs = []
    for i, p in enumerate(P.coeffs):
        coeffs.append(p.shift(-1) * RatFunc(X + i))
    out = OreOperator(Kind.SHIFT, coeffs)
    # at n = 0 the shifted rule reads sum_i p_i(-1) i b_i, which need not vanish
    if any(p(-1) for p in P.coeffs[1:]):
        out = out.scale(RatFunc.x())
    return out.primitive()


# -- guessing ----------------------------------------------------------


def _operator_from_vector(v: Sequence[Fraction], r: int, d: int) -> OreOperator:
    coeffs = [Poly(v[i * (d + 1):(i + 1) * (d + 1)]) for i in range(r + 1)]
    return OreOperator(Kind.DIFF, coeffs)


def _residual_rows(a: Sequence[Fraction], r: int, d: int, ns: range) -> list:
    rows = []
    for n in ns:
        row = []
        for i in range(r + 1):
            for j in range(d + 1):
                k = n - j + i
                if k < 0:
                    row.append(Fraction(0))
                else:
                    ff = 1
                    for t in range(i):
                        ff *= k - t
                    row.append(ff * a[k])
        rows.append(row)
    return rows


def guess_min_annihilator(s: TruncSeries, max_ord: int, max_deg: int) -> Optional[OreOperator]:
    """Smallest-order, then smallest-degree operator fitting the reliable prefix.

    The last ``HOLDOUT`` reliable coefficients are kept out of the fit and
    used to verify the candidate.
    """
    need = (max_ord + 1) * (max_deg + 2) + HOLDOUT
    R = s.reliable
    if R < need:
        raise InsufficientTruncation(f"need {need} reliable coefficients, have {R}")
    a = s.coeffs
    if all(c == 0 for c in a[:R]):
        return OreOperator.scalar(Kind.DIFF, 1)
    fit = R - HOLDOUT
    for r in range(max_ord + 1):
        for d in range(max_deg + 1):
            ncols = (r + 1) * (d + 1)
            rows = _residual_rows(a, r, d, range(0, fit - r))
            for v in nullspace(rows, ncols):
                if not any(v[r * (d + 1):]):
                    continue
                check = _residual_rows(a, r, d, range(fit - r, R - r))
                if all(sum(x * y for x, y in zip(row, v)) == 0 for row in check):
                    return _operator_from_vector(v, r, d).normalized()
    return None


def rec_to_diff(P: SequenceRule, s: TruncSeries) -> OreOperator:
    """Differential operator for the series whose coefficients P annihilates.

    Searched first inside order <= deg P and degree <= ord P + deg P; if
    nothing fits there the box is widened to order <= deg P + 1 and degree
    <= 2*ord P + deg P, which covers recurrences whose initial terms carry
    information the bound does not see (such as S - 1).
    """
    if P.is_zero():
        raise ZeroOperator("the zero recurrence")
    _require_polynomial(P)
    if not annihilates(P, s.prefix()):
        raise ValueError("the recurrence does not annihilate the given coefficients")
    r, d = P.order, P.degree
    for max_ord, max_deg in ((d, r + d), (d + 1, 2 * r + d)):
        if max_ord < 1:
            continue
        L = guess_min_annihilator(s, max_ord, max_deg)
        if L is not None and annihilates(diff_to_rec(L), s.prefix()):
            return L
    raise NoAnnihilatorFound(f"no operator found for {P} within the widened bounds")


# -- integration of operators ------------------------------------------


@dataclass(frozen=True)
class OperatorIntegral:
    operator: OreOperator
    minimal: bool

    @property
    def minimality(self) -> str:
        return "minimal" if self.minimal else "unknown"


def integral_diff(L: OreOperator) -> OperatorIntegral:
    """An operator whose solutions differentiate onto the solutions of L.

    For first-order L = l1*D + l0 an integral of the same order exists iff
    p' + u*p = 1 has a rational solution p, with u = -l0/l1; the integral is
    then D - (p'/p + u).  Otherwise L*D is returned without a minimality claim.
    """
    if L.is_zero():
        raise ZeroOperator("the zero operator")
    fallback = OperatorIntegral((L * OreOperator.generator(Kind.DIFF)).primitive(), False)
    if L.order != 1:
        return fallback
    u = -L.coeffs[0] / L.coeffs[1]
    if u.is_zero():
        p: Optional[RatFunc] = RatFunc.x()
    else:
        try:
            p = fexpg_solve(RatFunc(1), u)
        except Unsupported:
            p = None
    if p is None:
        return fallback
    rate = p.diff() / p + u
    return OperatorIntegral(OreOperator(Kind.DIFF, [-rate, 1]).primitive(), True)


# -- eventual stability ------------------------------------------------


def eventual_stability_bound(P: SequenceRule) -> tuple[int, int]:
    """(degree bound, order bound) for the annihilators of iterated integrals."""
    if P.is_zero():
        raise ZeroOperator("the zero recurrence")
    deg_bound = 2 * max(1, P.degree) * max(1, P.order) ** 2
    return deg_bound, deg_bound


def default_truncation(P: SequenceRule) -> int:
    _, ob = eventual_stability_bound(P)
    return 4 * (ob + 1) * (ob + 3) + 16


@dataclass(frozen=True)
class Certificate:
    m: int
    stable_order: int
    annihilators: tuple
    bound_used: int
    deg_bound: int
    profile: tuple
    truncation: int


def eventual_stability_certificate(
    s: TruncSeries, P: SequenceRule, max_m: int = 6, window: int = 2
) -> Certificate:
    """Smallest m such that int^m(s), ..., int^(m+window)(s) share one annihilator order."""
    if not annihilates(P, s.prefix()):
        raise ValueError("the recurrence does not annihilate the given coefficients")
    deg_bound, order_bound = eventual_stability_bound(P)
    max_deg = P.order + deg_bound
    ops: list = []
    series = s
    for _ in range(max_m + window + 1):
        ops.append(guess_min_annihilator(series, order_bound, max_deg))
        series = formal_integral(series)
    profile = tuple(op.order if op is not None else None for op in ops)
    for m in range(max_m + 1):
        orders = profile[m:m + window + 1]
        if orders[0] is not None and orders[0] >= 1 and all(o == orders[0] for o in orders):
            return Certificate(m, orders[0], tuple(ops[m:m + window + 1]), order_bound, deg_bound, profile, s.T)
    raise NoCertificateWithinLimits(f"no stable window with m <= {max_m}", profile)


# -- named generators --------------------------------------------------


def named_series(name: str, T: Optional[int] = None) -> tuple[TruncSeries, SequenceRule]:
    """``exp``, ``geom`` or ``poly:<polynomial in x>`` with its recurrence."""
    from .parse import parse_poly

    n = RatFunc.x()
    if name == "exp":
        P = OreOperator(Kind.SHIFT, [-1, n + 1])
        make = exp_series
    elif name == "geom":
        P = OreOperator(Kind.SHIFT, [-1, 1])
        make = geom_series
    elif name.startswith("poly:"):
        p = parse_poly(name[len("poly:"):])
        q = Poly.const(1)
        for j in range(max(p.degree, 0)):
            q = q * (X - j)
        P = OreOperator(Kind.SHIFT, [0, RatFunc(q)])

        def make(t: int) -> TruncSeries:
            return poly_series(p, t)
    else:
        raise ValueError(f"unknown generator {name!r}")
    return make(default_truncation(P) if T is None else T), P
