"""Finite discrete dynamical systems (A, phi) and their distinguished subsets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Mapping


class InvalidBounds(ValueError):
    pass


class InvalidSystem(ValueError):
    pass


@dataclass(frozen=True)
class FiniteDynSys:
    elements: tuple
    mapping: Mapping

    def __post_init__(self):
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise InvalidSystem("duplicate elements")
        known = set(elems)
        for a in elems:
            if a not in self.mapping:
                raise InvalidSystem(f"map is undefined at {a!r}")
            if self.mapping[a] not in known:
                raise InvalidSystem(f"image of {a!r} leaves the element set")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "mapping", dict(self.mapping))

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteDynSys":
        return cls(tuple(data["elements"]), dict(data["map"]))

    def __call__(self, a: Hashable) -> Hashable:
        return self.mapping[a]

    def image(self, subset) -> frozenset:
        return frozenset(self.mapping[a] for a in subset)

    def is_surjective(self) -> bool:
        return len(self.image(self.elements)) == len(self.elements)


@dataclass(frozen=True)
class SubsetReport:
    fix: frozenset
    per: frozenset
    stab: frozenset
    attrac: frozenset


def fixed_points(sys: FiniteDynSys) -> frozenset:
    return frozenset(a for a in sys.elements if sys(a) == a)


def periodic_points(sys: FiniteDynSys) -> frozenset:
    # a is periodic iff it returns to itself within |A| steps
    out = set()
    n = len(sys.elements)
    for a in sys.elements:
        b = sys(a)
        for _ in range(n):
            if b == a:
                out.add(a)
                break
            b = sys(b)
    return frozenset(out)


def stable_points(sys: FiniteDynSys) -> frozenset:
    """Largest B with phi(B) = B: elements with an infinite backward chain."""
    B = frozenset(sys.elements)
    while True:
        nxt = sys.image(B) & B
        if nxt == B:
            return B
        B = nxt


def attractive_points(sys: FiniteDynSys, steps: int | None = None) -> frozenset:
    """Intersection of phi^i(A) for i up to ``steps`` (default |A|)."""
    cur = frozenset(sys.elements)
    out = cur
    for _ in range(len(sys.elements) if steps is None else steps):
        cur = sys.image(cur)
        out = out & cur
    return out


def analyze(sys: FiniteDynSys) -> SubsetReport:
    return SubsetReport(fixed_points(sys), periodic_points(sys), stable_points(sys), attractive_points(sys))


def _brute_force_stab(sys: FiniteDynSys) -> frozenset:
    best: frozenset = frozenset()
    elems = sys.elements
    for k in range(len(elems), 0, -1):
        for combo in combinations(elems, k):
            B = frozenset(combo)
            if sys.image(B) == B:
                best = best | B
    return best


@dataclass(frozen=True)
class GodelleReport:
    chain: bool
    invariant: bool
    surjective: bool
    stab_equals_attrac: bool
    maximal: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.chain
            and self.invariant
            and (not self.surjective or self.stab_equals_attrac)
            and self.maximal is not False
        )


def check_godelle(sys: FiniteDynSys, brute_force_limit: int = 12) -> GodelleReport:
    """Check the inclusion chain, phi(Stab) = Stab, and Stab = Attrac for surjective phi.

    Maximality of Stab is confirmed by enumerating all subsets when the
    system has at most ``brute_force_limit`` elements, and left as None otherwise.
    """
    r = analyze(sys)
    chain = r.fix <= r.per <= r.stab <= r.attrac
    maximal = None
    if len(sys.elements) <= brute_force_limit:
        maximal = _brute_force_stab(sys) == r.stab
    return GodelleReport(
        chain=chain,
        invariant=sys.image(r.stab) == r.stab,
        surjective=sys.is_surjective(),
        stab_equals_attrac=r.stab == r.attrac,
        maximal=maximal,
    )


def godelle_truncation(N: int, M: int) -> FiniteDynSys:
    """The staircase system on {(i, j) : 0 <= j <= max(i-1, 0)} cut to -N <= i <= M.

    The map sends (i, j) to (i, j-1) for j >= 1 and (i, 0) to
    (min(i-1, 0), 0).  The one image that leaves the box, phi(-N, 0),
    is clamped to (-N, 0).
    On the infinite staircase no element is stable although every element
    of the spine is attractive; that needs infinitely many states.  After
    clamping, (-N, 0) becomes a fixed point that the whole box drains
    into, so Stab = Attrac = {(-N, 0)} here.
    """
    if N < 1 or M < 1:
        raise InvalidBounds("N and M must be at least 1")
    elements = []
    for i in range(-N, M + 1):
        for j in range(max(i - 1, 0) + 1):
            elements.append((i, j))
    mapping = {}
    for i, j in elements:
        if j >= 1:
            mapping[(i, j)] = (i, j - 1)
        else:
            mapping[(i, j)] = (max(min(i - 1, 0), -N), 0)
    return FiniteDynSys(tuple(elements), mapping)
