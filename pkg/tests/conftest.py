import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stabint.poly import Poly
from stabint.ratfunc import RatFunc

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

X = sympy.Symbol("x")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(max_deg=4, nonzero=False):
    s = st.lists(small_fracs, min_size=1, max_size=max_deg + 1).map(Poly)
    if nonzero:
        s = s.filter(lambda p: not p.is_zero())
    return s


def ratfuncs(num_deg=4, den_deg=4):
    return st.builds(RatFunc, polys(num_deg), polys(den_deg, nonzero=True))


def to_sympy(f):
    if isinstance(f, Poly):
        return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.coeffs))
    return to_sympy(f.num) / to_sympy(f.den)


def random_poly(rng, deg, lo=-5, hi=5):
    while True:
        p = Poly([Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(deg + 1)])
        if p.degree == deg:
            return p


def random_ratfunc(rng, max_num=6, max_den=6):
    num = random_poly(rng, rng.randint(0, max_num))
    den = random_poly(rng, rng.randint(0, max_den))
    return RatFunc(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)
