import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polys
from stabint.dfinite import (
    HOLDOUT,
    InsufficientTruncation,
    NoCertificateWithinLimits,
    ZeroOperator,
    annihilates,
    diff_to_rec,
    eventual_stability_bound,
    eventual_stability_certificate,
    formal_integral,
    guess_min_annihilator,
    integral_diff,
    integral_rec,
    named_series,
    rec_to_diff,
)
from stabint.ore import Kind, OreOperator, apply
from stabint.parse import parse_operator
from stabint.poly import Poly
from stabint.series import TruncSeries, exp_series, from_values, geom_series, poly_series


def op(text, kind=None):
    return parse_operator(text, kind)


def equivalent(A, B):
    """Equal up to a nonzero rational factor."""
    return A.normalized() == B.normalized()


def test_diff_to_rec_examples():
    assert diff_to_rec(op("D - 1")) == op("(n+1)*S - 1")
    assert diff_to_rec(op("D")) == op("(n+1)*S")
    assert diff_to_rec(op("x*D - 1")) == op("n - 1", Kind.SHIFT)
    with pytest.raises(ZeroOperator):
        diff_to_rec(OreOperator(Kind.DIFF, []))


def test_rec_to_diff_examples():
    assert rec_to_diff(op("(n+1)*S - 1"), exp_series(24)) == op("D - 1")
    ones = from_values([1] + [0] * 24)
    assert rec_to_diff(op("(n+1)*S"), ones) == op("D")
    assert equivalent(rec_to_diff(op("S - 1"), geom_series(24)), op("(1-x)*D - 1"))


def test_formal_integral_examples():
    s = formal_integral(from_values([1, 1, Fraction(1, 2), Fraction(1, 6)]))
    assert s.coeffs == tuple(map(Fraction, (0, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))))
    assert formal_integral(from_values([0, 0])).coeffs == (0, 0, 0)
    s = formal_integral(from_values([1, 1, 1, 1]))
    assert s.coeffs == (0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


def test_integral_rec_examples():
    P = op("(n+1)*S - 1")
    Q = integral_rec(P)
    assert equivalent(Q, op("n*((n+1)*S - 1)"))
    assert annihilates(Q, formal_integral(exp_series(20)).coeffs)
    Q = integral_rec(op("(n+1)*S"))
    for c in (1, 5, Fraction(-2, 3)):
        a = [c] + [0] * 15
        assert annihilates(Q, formal_integral(from_values(a)).coeffs)


def test_integral_diff_first_order():
    # int(D - 1) = D - 1: the derivatives of c*exp(x) are c*exp(x)
    r = integral_diff(op("D - 1"))
    assert r.operator == op("D - 1") and r.minimal
    r = integral_diff(op("D"))
    assert r.operator == op("x*D - 1") and r.minimal
    assert apply(r.operator, RatFunc_x()).is_zero()
    r = integral_diff(op("D - 2"))
    assert r.operator == op("D - 2") and r.minimal


def test_integral_diff_fallback():
    r = integral_diff(op("D^2 + 1"))
    assert r.operator == op("D^3 + D") and not r.minimal
    r = integral_diff(op("x*D - 2"))  # exponent derivative 2/x is outside the supported regimes
    assert r.operator.order == 2 and not r.minimal


def RatFunc_x():
    from stabint.ratfunc import RatFunc
    return RatFunc.x()


def test_guess_examples():
    assert guess_min_annihilator(exp_series(40), 3, 3) == op("D - 1")
    em1 = TruncSeries((0,) + exp_series(40).coeffs[1:])
    assert guess_min_annihilator(em1, 3, 3) == op("D^2 - D")
    assert guess_min_annihilator(poly_series(Poly([0, 0, 1]), 40), 3, 3) == op("x*D - 2")
    with pytest.raises(InsufficientTruncation):
        guess_min_annihilator(exp_series(10), 3, 3)


def test_bound_examples():
    assert eventual_stability_bound(op("(n+1)*S - 1")) == (2, 2)
    assert eventual_stability_bound(op("n^3*S^2 + S + 1")) == (24, 24)
    assert eventual_stability_bound(op("S - 1")) == (2, 2)


@pytest.mark.parametrize("name, m, order", [("exp", 1, 2), ("geom", 1, 2), ("poly:x", 0, 1), ("poly:x^3 - 2", 0, 1)])
def test_certificates(name, m, order):
    s, P = named_series(name)
    c = eventual_stability_certificate(s, P)
    assert (c.m, c.stable_order) == (m, order)
    assert c.stable_order <= c.bound_used
    assert all(L.order == order for L in c.annihilators)


def test_certificate_annihilators_kill_their_series():
    s, P = named_series("exp")
    c = eventual_stability_certificate(s, P)
    series = s
    for _ in range(c.m):
        series = formal_integral(series)
    for L in c.annihilators:
        assert apply(L, series).is_zero_prefix()
        series = formal_integral(series)


def test_certificate_reports_profile():
    s, P = named_series("exp")
    with pytest.raises(NoCertificateWithinLimits) as info:
        eventual_stability_certificate(s, P, max_m=0, window=2)
    assert info.value.profile[:2] == [1, 2]


def test_exp_tail_operator_from_closed_form():
    # (p'-p)D^2 - (p''-p)D + (p''-p') kills exp(x) - p(x) for the Taylor polynomial p
    for k in range(1, 4):
        p = Poly([Fraction(1, factorial(j)) for j in range(k)])
        dp, ddp = p.derivative(), p.derivative().derivative()
        L = OreOperator(Kind.DIFF, [ddp - dp, -(ddp - p), dp - p])
        tail = TruncSeries(tuple(Fraction(0) if n < k else Fraction(1, factorial(n)) for n in range(30)))
        assert apply(L, tail).is_zero_prefix()


# -- properties -------------------------------------------------------------


def test_round_trip_derivative_of_integral():
    rng = random.Random(7)
    for _ in range(20):
        s = from_values([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(12)])
        back = formal_integral(s).derivative()
        assert back.coeffs[: s.T] == s.coeffs[: s.T]


CLOSED_FORMS = [
    (op("D - 1"), exp_series),
    (op("(1-x)*D - 1"), geom_series),
    (op("(1-x)^2*D - 2*(1-x)"), lambda T: TruncSeries(tuple(n + 1 for n in range(T + 1)))),
    (op("x*D - 3"), lambda T: poly_series(Poly([0, 0, 0, 5]), T)),
    (op("D - 2"), lambda T: TruncSeries(tuple(Fraction(2**n, factorial(n)) for n in range(T + 1)))),
]


def test_integral_rec_soundness_suite():
    rng = random.Random(11)
    for _ in range(20):
        L, make = rng.choice(CLOSED_FORMS)
        P = diff_to_rec(L)
        scale = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        s = TruncSeries(tuple(c * scale for c in make(25).coeffs))
        assert annihilates(P, s.coeffs)
        Q = integral_rec(P)
        assert Q.order == P.order
        assert annihilates(Q, formal_integral(s).coeffs)


@settings(max_examples=20)
@given(st.lists(polys(2), min_size=2, max_size=3))
def test_integral_rec_preserves_order(cs):
    P = OreOperator(Kind.SHIFT, cs)
    if P.is_zero():
        return
    assert integral_rec(P).order == P.order


@settings(max_examples=30)
@given(st.lists(polys(2), min_size=1, max_size=3), st.sampled_from([exp_series, geom_series]))
def test_diff_to_rec_consistent_with_apply(cs, make):
    L = OreOperator(Kind.DIFF, cs)
    if L.is_zero():
        return
    s = make(30)
    zero_prefix = apply(L, s).is_zero_prefix()
    assert zero_prefix == annihilates(diff_to_rec(L), s.coeffs[: s.reliable - L.order])


def test_guessed_operators_verify_on_holdout():
    for make in (exp_series, geom_series, CLOSED_FORMS[2][1], CLOSED_FORMS[4][1]):
        s = make(45)
        L = guess_min_annihilator(s, 2, 2)
        assert L is not None
        fit = s.truncate(len(s) - HOLDOUT)
        assert apply(L, s).is_zero_prefix()
        assert apply(L, fit).is_zero_prefix()
