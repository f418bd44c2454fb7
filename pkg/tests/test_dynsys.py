import random
from itertools import product

import pytest

from stabint.dynsys import (
    FiniteDynSys,
    InvalidBounds,
    InvalidSystem,
    analyze,
    attractive_points,
    check_godelle,
    godelle_truncation,
)


def random_system(rng, n):
    elems = tuple(range(n))
    return FiniteDynSys(elems, {a: rng.randrange(n) for a in elems})


def test_identity():
    s = FiniteDynSys(("a", "b", "c"), {"a": "a", "b": "b", "c": "c"})
    r = analyze(s)
    assert r.fix == r.per == r.stab == r.attrac == {"a", "b", "c"}


def test_collapse():
    s = FiniteDynSys((0, 1), {1: 0, 0: 0})
    r = analyze(s)
    assert r.fix == r.per == r.stab == r.attrac == {0}
    g = check_godelle(s)
    assert not g.surjective and g.chain and g.ok


def test_three_cycle():
    s = FiniteDynSys((0, 1, 2), {0: 1, 1: 2, 2: 0})
    r = analyze(s)
    assert r.fix == frozenset() and r.per == r.stab == r.attrac == {0, 1, 2}


def test_permutation_is_surjective():
    rng = random.Random(3)
    perm = list(range(9))
    rng.shuffle(perm)
    s = FiniteDynSys(tuple(range(9)), dict(enumerate(perm)))
    g = check_godelle(s)
    r = analyze(s)
    assert g.surjective and r.stab == r.attrac == set(range(9))


def test_invalid_systems():
    with pytest.raises(InvalidSystem):
        FiniteDynSys((0, 1), {0: 1})
    with pytest.raises(InvalidSystem):
        FiniteDynSys((0, 1), {0: 1, 1: 2})


def test_tail_into_cycle_is_not_stable():
    # 3 -> 2 -> 0 <-> 1: only the cycle is stable
    s = FiniteDynSys((0, 1, 2, 3), {0: 1, 1: 0, 2: 0, 3: 2})
    r = analyze(s)
    assert r.stab == r.attrac == {0, 1} and r.per == {0, 1}


def test_godelle_truncation():
    s = godelle_truncation(3, 3)
    r = analyze(s)
    assert (-3, 0) in s.elements and (3, 2) in s.elements and (3, 3) not in s.elements
    assert s((1, 0)) == (0, 0) and s((0, 0)) == (-1, 0) and s((-3, 0)) == (-3, 0)
    # clamping makes (-3, 0) the only fixed point, and everything drains into it
    assert r.stab == r.attrac == r.fix == {(-3, 0)}
    assert check_godelle(s).ok
    r = analyze(godelle_truncation(1, 1))
    assert r.stab == {(-1, 0)}
    with pytest.raises(InvalidBounds):
        godelle_truncation(0, 2)


def test_godelle_spine_before_draining():
    # after i steps the image still contains the spine points -N..0 while the box drains
    s = godelle_truncation(3, 4)
    for steps in range(1, 4):
        assert {(i, 0) for i in range(-3, 1 - steps + 1) if i <= 0} <= attractive_points(s, steps)


def test_random_systems():
    rng = random.Random(2024)
    for _ in range(100):
        s = random_system(rng, rng.randint(1, 200))
        r = analyze(s)
        assert r.fix <= r.per <= r.stab <= r.attrac
        assert s.image(r.stab) == r.stab
        if s.is_surjective():
            assert r.stab == r.attrac
        assert attractive_points(s, 2 * len(s.elements)) == r.attrac


def test_stab_maximal_on_small_systems():
    rng = random.Random(99)
    for _ in range(60):
        g = check_godelle(random_system(rng, rng.randint(1, 12)))
        assert g.maximal is True and g.ok
    # every self-map on 4 points
    for images in product(range(4), repeat=4):
        s = FiniteDynSys(tuple(range(4)), dict(enumerate(images)))
        assert check_godelle(s).ok
