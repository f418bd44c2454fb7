"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional

from .poly import Poly


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients a_0..a_T of sum a_n x^n.

    ``reliable`` counts the leading coefficients that are known exactly;
    anything past it was computed from missing data and must not be read.
    """

    coeffs: tuple
    reliable: Optional[int] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        if self.reliable is None:
            object.__setattr__(self, "reliable", len(self.coeffs))

    @property
    def T(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def prefix(self) -> tuple:
        return self.coeffs[: self.reliable]

    def is_zero_prefix(self) -> bool:
        return all(c == 0 for c in self.prefix())

    def truncate(self, length: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[:length], min(self.reliable, length))

    def derivative(self) -> "TruncSeries":
        out = [n * self.coeffs[n] for n in range(1, len(self.coeffs))] or [0]
        return TruncSeries(out, max(0, self.reliable - 1))


def from_values(values: Iterable) -> TruncSeries:
    return TruncSeries(tuple(values))


def exp_series(T: int) -> TruncSeries:
    return TruncSeries(tuple(Fraction(1, factorial(n)) for n in range(T + 1)))


def geom_series(T: int) -> TruncSeries:
    return TruncSeries((1,) * (T + 1))


def poly_series(p: Poly, T: int) -> TruncSeries:
    return TruncSeries(tuple(p[n] for n in range(T + 1)))
