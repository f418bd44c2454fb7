"""Stability deciders, witness chains and the moment falsifier.

An element is stable when it has an infinite backward chain
``a = d(a_1), a_1 = d(a_2), ...``.  Over Q(x) with d/dx this means being a
polynomial.  Under the Euler derivation x*d/dx it means being a Laurent
polynomial without constant term.  Over elementary extensions with d/dx
three shapes are decided:

* rational functions, always stable;
* ``f*log(x)^m``, stable when f is a Laurent polynomial, and for m = 1
  only then;
* ``f*exp(g)`` with g nonconstant, stable iff f is a polynomial and g is
  linear.

Sums are split into exponential components, which the derivation keeps
apart, and each component is decided on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import ClassVar, Iterable, Optional, Union

from .elementary import ElemExpr, ElemSum
from .integrate import integrable_in_field
from .poly import X, Poly
from .ratfunc import Derivation, RatFunc, is_laurent, squarefree_factorization

OBSTRUCTION_KINDS = ("moment_index", "residue", "degree_drop", "constant_term")


class NotStableInput(ValueError):
    pass


class WitnessUnavailable(ValueError):
    """The element is stable but its chain leaves the represented expressions."""


@dataclass(frozen=True)
class Obstruction:
    kind: str
    index: Optional[int] = None
    pole: Optional[Poly] = None
    detail: str = ""

    def __post_init__(self):
        if self.kind not in OBSTRUCTION_KINDS:
            raise ValueError(f"unknown obstruction kind {self.kind!r}")


@dataclass(frozen=True)
class WitnessChain:
    input: ElemSum
    links: tuple
    derivation: Derivation = Derivation.DDX

    def __len__(self) -> int:
        return len(self.links)


@dataclass(frozen=True)
class Stable:
    status: ClassVar[str] = "stable"
    input: ElemSum
    derivation: Derivation = Derivation.DDX
    setting: str = "elementary"
    note: Optional[str] = None

    @property
    def witness_available(self) -> bool:
        return self.note is None

    def chain(self, k: int) -> WitnessChain:
        if self.note is not None:
            raise WitnessUnavailable(self.note)
        return _build_chain(self.input, k, self.derivation)


@dataclass(frozen=True)
class NotStable:
    status: ClassVar[str] = "not_stable"
    input: ElemSum
    obstruction: Obstruction
    derivation: Derivation = Derivation.DDX
    setting: str = "elementary"


@dataclass(frozen=True)
class OutOfFragment:
    status: ClassVar[str] = "out_of_fragment"
    input: Optional[ElemSum]
    reason: str
    derivation: Derivation = Derivation.DDX
    setting: str = "elementary"


Verdict = Union[Stable, NotStable, OutOfFragment]
Elementary = Union[ElemSum, ElemExpr, RatFunc, Poly, int, Fraction]


def _radical(p: Poly, drop_x: bool = False) -> Poly:
    out = Poly.const(1)
    for v, _ in squarefree_factorization(p):
        out = out * v
    if drop_x and out.degree >= 1 and out[0] == 0:
        out = out.exact_div(X)
    return out.monic()


# -- Q(x) --------------------------------------------------------------


def moment_obstruction(f: RatFunc, N: int) -> Optional[int]:
    """Smallest i <= N with x^i*f not integrable in Q(x), else None."""
    term = f
    x = RatFunc.x()
    for i in range(N + 1):
        if integrable_in_field(term) is None:
            return i
        term = term * x
    return None


def stable_in_ratfield(f: RatFunc, d: Derivation = Derivation.DDX) -> Verdict:
    e = ElemSum.of(f)
    if d is Derivation.DDX:
        if f.is_polynomial():
            return Stable(e, d, "field")
        # the first failing moment is below the largest pole multiplicity
        i = moment_obstruction(f, f.den.degree)
        if i is None:
            raise ArithmeticError(f"no failing moment found for {f}")
        return NotStable(e, Obstruction("moment_index", index=i, pole=_radical(f.den)), d, "field")
    if f.is_zero():
        return Stable(e, d, "field")
    data = is_laurent(f)
    if data is None:
        pole = _radical(f.den, drop_x=True)
        return NotStable(e, Obstruction("residue", pole=pole, detail="pole away from 0"), d, "field")
    c0 = data.constant_term()
    if c0:
        return NotStable(e, Obstruction("constant_term", detail=str(c0)), d, "field")
    return Stable(e, d, "field")


# -- elementary extensions -------------------------------------------


def _components(e: ElemSum) -> dict:
    """Group terms by the derivative of their exponent."""
    groups: dict = {}
    for (m, g), f in e.items():
        groups.setdefault(g.diff(), []).append((m, g, f))
    return groups


def stable_elementary(e: Elementary) -> Verdict:
    """Decide stability over elementary extensions of Q(x) under d/dx."""
    e = ElemSum.of(e)
    not_stable: Optional[Obstruction] = None
    unknown: Optional[str] = None
    note: Optional[str] = None
    for gprime, terms in sorted(_components(e).items(), key=lambda kv: str(kv[0])):
        if gprime.is_zero():
            verdict = _log_component(terms)
        else:
            verdict = _exp_component(gprime, terms)
        kind, payload = verdict
        if kind == "not_stable" and not_stable is None:
            not_stable = payload
        elif kind == "unknown" and unknown is None:
            unknown = payload
        elif kind == "stable" and payload and note is None:
            note = payload
    if not_stable is not None:
        return NotStable(e, not_stable)
    if unknown is not None:
        return OutOfFragment(e, unknown)
    return Stable(e, note=note)


def _log_component(terms) -> tuple:
    bad = []
    note = None
    for m, g, f in terms:
        if is_laurent(f) is not None:
            continue
        if m == 0:
            # rational functions are stable once logarithms are allowed
            note = f"the chain of {f} needs logarithms of polynomials other than x"
            continue
        bad.append((m, f))
    if not bad:
        return ("stable", note)
    if len(bad) == 1 and bad[0][0] == 1:
        f = bad[0][1]
        pole = _radical(f.den, drop_x=True)
        return ("not_stable", Obstruction("residue", pole=pole, detail=f"{f}*log(x) fails the Liouville-Hardy test"))
    return ("unknown", "non-Laurent coefficient of a power of log(x) above the first")


def _exp_component(gprime: RatFunc, terms) -> tuple:
    if any(m for m, _, _ in terms):
        return ("unknown", "mixed log and exp factors")
    if not gprime.is_constant():
        return ("not_stable", Obstruction("degree_drop", detail=f"exponent derivative {gprime} is not constant"))
    for _, _, f in terms:
        if not f.is_polynomial():
            return ("not_stable", Obstruction("residue", pole=_radical(f.den), detail=f"{f} is not a polynomial"))
    return ("stable", None)


def decide(e: Elementary, d: Derivation = Derivation.DDX, setting: str = "elementary") -> Verdict:
    """Front door used by the command line: route to the right decider."""
    e = ElemSum.of(e)
    if setting == "field" or d is Derivation.EULER:
        if not e.is_rational():
            return OutOfFragment(e, "only rational functions are decided here", d, "field")
        return stable_in_ratfield(e.as_rational(), d)
    if setting != "elementary":
        raise ValueError(f"unknown setting {setting!r}")
    return stable_elementary(e)


# -- closed forms -------------------------------------------------------


def integrate_xn_logm(n: int, m: int) -> ElemSum:
    """An antiderivative of x^n*log(x)^m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if n == -1:
        return ElemSum.term(Fraction(1, m + 1), m + 1)
    xn1 = RatFunc(Poly.monomial(n + 1)) if n + 1 >= 0 else RatFunc(1, Poly.monomial(-(n + 1)))
    out = ElemSum()
    for k in range(m + 1):
        c = Fraction((-1) ** k * factorial(m), factorial(m - k)) / Fraction(n + 1) ** (k + 1)
        out = out + ElemSum.term(xn1 * c, m - k)
    return out


def _laurent_antiderivative(f: RatFunc, m: int, g: RatFunc) -> ElemSum:
    data = is_laurent(f)
    if data is None:
        raise WitnessUnavailable(f"the chain of {f} needs logarithms of polynomials other than x")
    out = ElemSum()
    for n, c in data.coeffs.items():
        out = out + integrate_xn_logm(n, m) * c
    if g.is_zero():
        return out
    return out * ElemSum.term(1, 0, g)


def _exp_antiderivative(f: Poly, lam: Fraction, g: RatFunc) -> ElemSum:
    # h' + lam*h = f has the polynomial solution sum_j (-1)^j f^(j) / lam^(j+1)
    h = Poly()
    deriv = f
    j = 0
    while deriv:
        h = h + deriv * (Fraction((-1) ** j) / lam ** (j + 1))
        deriv = deriv.derivative()
        j += 1
    return ElemSum.term(RatFunc(h), 0, g)


def antiderivative(e: ElemSum, d: Derivation = Derivation.DDX) -> ElemSum:
    """One backward step with zero integration constants."""
    if d is Derivation.EULER:
        if not e.is_rational():
            raise WitnessUnavailable("Euler chains are built for rational input only")
        data = is_laurent(e.as_rational())
        if data is None or data.constant_term():
            raise NotStableInput(f"{e} has no Euler chain")
        out = RatFunc()
        for i, c in data.coeffs.items():
            out = out + c / i * _xpow(i)
        return ElemSum.of(out)
    out = ElemSum()
    for (m, g), f in e.items():
        gprime = g.diff()
        if gprime.is_zero():
            out = out + _laurent_antiderivative(f, m, g)
            continue
        if m or not gprime.is_constant() or not f.is_polynomial():
            raise NotStableInput(f"{ElemExpr(f, m, g)} has no closed-form chain")
        out = out + _exp_antiderivative(f.num, gprime.constant_value(), g)
    return out


def _xpow(i: int) -> RatFunc:
    return RatFunc(Poly.monomial(i)) if i >= 0 else RatFunc(1, Poly.monomial(-i))


def _build_chain(e: ElemSum, k: int, d: Derivation) -> WitnessChain:
    if k < 1:
        raise ValueError("depth must be at least 1")
    links = []
    cur = e
    for _ in range(k):
        cur = antiderivative(cur, d)
        links.append(cur)
    return WitnessChain(e, tuple(links), d)


def witness_chain(e: Elementary, k: int, d: Derivation = Derivation.DDX) -> WitnessChain:
    """Depth-k chain for a stable element; raises NotStableInput otherwise."""
    e = ElemSum.of(e)
    v = decide(e, d)
    if not isinstance(v, Stable):
        raise NotStableInput(f"{e} is {v.status.replace('_', ' ')}")
    return v.chain(k)


def check_chain(e: Elementary, chain: Union[WitnessChain, Iterable], d: Optional[Derivation] = None) -> bool:
    """True iff each link differentiates exactly to its predecessor."""
    if isinstance(chain, WitnessChain):
        links = chain.links
        d = d or chain.derivation
    else:
        links = tuple(chain)
    d = d or Derivation.DDX
    prev = ElemSum.of(e)
    for link in links:
        link = ElemSum.of(link)
        if link.derivative(d) != prev:
            return False
        prev = link
    return True
