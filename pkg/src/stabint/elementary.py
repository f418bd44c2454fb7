"""Elementary expressions of the shape f * log(x)^m * exp(g).

``ElemExpr`` is a single such term; ``ElemSum`` is a finite sum of them,
kept canonical by collecting coefficients per (m, g).  Sums are closed
under differentiation, which single terms are not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from .poly import X, Poly
from .ratfunc import Derivation, RatFunc, format_ratfunc

_ZERO = RatFunc()


@dataclass(frozen=True)
class ElemExpr:
    """f * log(x)^logpow * exp(expo); ``expo == 0`` means no exponential factor."""

    f: RatFunc
    logpow: int = 0
    expo: RatFunc = field(default=_ZERO)

    def __post_init__(self):
        if self.logpow < 0:
            raise ValueError("log power must be nonnegative")

    @property
    def has_exp(self) -> bool:
        return not self.expo.is_constant()

    def __str__(self) -> str:
        return format_term(self.f, self.logpow, self.expo)


Key = tuple  # (logpow, expo)


def _sort_key(item):
    (m, g), _ = item
    return (str(g), -m)


class ElemSum:
    """Canonical finite sum of ``ElemExpr`` terms."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, None] = None):
        clean = {}
        if terms:
            for key, f in terms.items():
                if not f.is_zero():
                    clean[key] = f
        self._terms = clean

    @classmethod
    def of(cls, item) -> "ElemSum":
        if isinstance(item, ElemSum):
            return item
        if isinstance(item, ElemExpr):
            return cls({(item.logpow, item.expo): item.f})
        if isinstance(item, (RatFunc, Poly, int, Fraction)):
            f = item if isinstance(item, RatFunc) else RatFunc(item)
            return cls({(0, _ZERO): f})
        raise TypeError(f"cannot build an elementary sum from {type(item).__name__}")

    @classmethod
    def term(cls, f, logpow: int = 0, expo: Optional[RatFunc] = None) -> "ElemSum":
        f = f if isinstance(f, RatFunc) else RatFunc(f)
        return cls({(logpow, expo if expo is not None else _ZERO): f})

    # -- structure --------------------------------------------------------

    def terms(self) -> Iterator[ElemExpr]:
        for (m, g), f in sorted(self._terms.items(), key=_sort_key):
            yield ElemExpr(f, m, g)

    def items(self):
        return self._terms.items()

    def coefficient(self, logpow: int = 0, expo: Optional[RatFunc] = None) -> RatFunc:
        return self._terms.get((logpow, expo if expo is not None else _ZERO), _ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(m == 0 and g.is_zero() for m, g in self._terms)

    def as_rational(self) -> RatFunc:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational function")
        return self._terms.get((0, _ZERO), _ZERO)

    def single(self) -> Optional[ElemExpr]:
        if len(self._terms) == 1:
            return next(self.terms())
        if not self._terms:
            return ElemExpr(_ZERO)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElemSum):
            try:
                other = ElemSum.of(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"ElemSum({self})"

    def __str__(self) -> str:
        return format_sum(self)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "ElemSum":
        other = ElemSum.of(other)
        out = dict(self._terms)
        for key, f in other._terms.items():
            out[key] = out.get(key, _ZERO) + f
        return ElemSum(out)

    __radd__ = __add__

    def __neg__(self) -> "ElemSum":
        return ElemSum({k: -f for k, f in self._terms.items()})

    def __sub__(self, other) -> "ElemSum":
        return self + (-ElemSum.of(other))

    def __rsub__(self, other) -> "ElemSum":
        return ElemSum.of(other) + (-self)

    def __mul__(self, other) -> "ElemSum":
        other = ElemSum.of(other)
        out: dict = {}
        for (m1, g1), f1 in self._terms.items():
            for (m2, g2), f2 in other._terms.items():
                key = (m1 + m2, g1 + g2)
                out[key] = out.get(key, _ZERO) + f1 * f2
        return ElemSum(out)

    __rmul__ = __mul__

    def derivative(self, d: Derivation = Derivation.DDX) -> "ElemSum":
        """d/dx of the sum, or x*d/dx for the Euler derivation."""
        out: dict = {}
        inv_x = RatFunc(1, X)
        for (m, g), f in self._terms.items():
            main = f.diff() + f * g.diff()
            out[(m, g)] = out.get((m, g), _ZERO) + main
            if m:
                out[(m - 1, g)] = out.get((m - 1, g), _ZERO) + f * inv_x * m
        result = ElemSum(out)
        if d is Derivation.EULER:
            result = result * RatFunc.x()
        return result


# -- printing ----------------------------------------------------------


def _factor_text(f: RatFunc) -> str:
    text = format_ratfunc(f)
    if sum(1 for c in f.num.coeffs if c) == 1:
        return text
    return f"({text})"


def format_term(f: RatFunc, m: int, g: RatFunc) -> str:
    parts = []
    if m:
        parts.append("log(x)" if m == 1 else f"log(x)^{m}")
    if not g.is_zero():
        parts.append(f"exp({format_ratfunc(g)})")
    if not parts:
        return format_ratfunc(f)
    if f == RatFunc(1):
        return "*".join(parts)
    if f == RatFunc(-1):
        return "-" + "*".join(parts)
    return "*".join([_factor_text(f)] + parts)


def format_sum(e: ElemSum) -> str:
    if e.is_zero():
        return "0"
    texts = [str(t) for t in e.terms()]
    out = texts[0]
    for t in texts[1:]:
        if t.startswith("-") and not t.startswith("-("):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out
