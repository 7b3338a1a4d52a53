from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cayleydense.abelian import InvariantFactors
from cayleydense.cayley import CayleyDigraph, dilate_digraph
from cayleydense.density import (
    INFINITE,
    REGISTRY,
    ceil_root,
    delta,
    floor_root,
    in_Cd,
    is_conjectural,
    lower_bound,
    max_order,
    min_attaining_x,
    tightness,
    tightness_coefficient,
)

GAMMA1 = CayleyDigraph(InvariantFactors((1, 72)), ((-1, 4), (-3, 11)))
SPACE_SEED = CayleyDigraph(
    InvariantFactors((1, 1, 16)), ((0, 0, 1), (0, 1, -12), (1, 0, -11))
)


def test_registry_contents():
    assert REGISTRY[1].delta == 1 and REGISTRY[1].status == "proven"
    assert REGISTRY[2].delta == Fraction(1, 3) and REGISTRY[2].status == "proven"
    assert REGISTRY[3].delta == Fraction(21, 250) and REGISTRY[3].status == "conjectural"
    assert not is_conjectural(2) and is_conjectural(3)
    with pytest.raises(TypeError):
        REGISTRY[4] = None
    with pytest.raises(ValueError):
        delta(5)


def test_ceil_root_examples():
    assert ceil_root(216, 2) == 15
    assert ceil_root(Fraction(4000, 21), 3) == 6
    assert ceil_root(27, 3) == 3
    with pytest.raises(ValueError):
        ceil_root(0, 2)


@given(
    num=st.integers(min_value=1, max_value=10**30),
    den=st.integers(min_value=1, max_value=10**30),
    d=st.integers(min_value=1, max_value=6),
)
@settings(max_examples=300, deadline=None)
def test_ceil_root_is_exact(num, den, d):
    r = Fraction(num, den)
    x = ceil_root(r, d)
    assert x >= 1
    assert Fraction(x**d) >= r
    assert x == 1 or Fraction((x - 1) ** d) < r


@given(n=st.integers(min_value=0, max_value=10**36), d=st.integers(1, 7))
@settings(max_examples=300, deadline=None)
def test_floor_root_is_exact(n, d):
    x = floor_root(n, d)
    assert x**d <= n < (x + 1) ** d


def test_lower_bound_examples():
    assert lower_bound(2, 72) == 13
    assert lower_bound(1, 10) == 9
    assert lower_bound(3, 2000) == 26
    assert lower_bound(2, 1152) == 57


def test_lower_bound_monotone():
    for d in (1, 2, 3):
        values = [lower_bound(d, n) for n in range(1, 400)]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_tightness_examples():
    assert tightness(GAMMA1) == 0
    assert tightness(dilate_digraph(GAMMA1, 4)) == 1
    assert tightness(dilate_digraph(SPACE_SEED, 5)) == 1


def test_in_Cd_examples():
    assert in_Cd(3, 2)
    assert in_Cd(10, 3)
    assert not in_Cd(2, 2)


def test_min_attaining_x_examples():
    assert min_attaining_x(2) == 3
    assert min_attaining_x(3) == 10
    assert min_attaining_x(1) == 1
    assert in_Cd(min_attaining_x(2), 2) and in_Cd(min_attaining_x(3), 3)


def test_tightness_coefficient_examples():
    assert tightness_coefficient(2, 72) == 3
    assert tightness_coefficient(3, 16) == 4
    assert tightness_coefficient(2, 3) is INFINITE
    for n in range(1, 101):
        assert tightness_coefficient(1, n) is INFINITE


def test_tightness_coefficient_characterization():
    # finite c: the ceiling identity holds for m <= c and fails at c + 1
    for d in (2, 3):
        for n in range(2, 501):
            c = tightness_coefficient(d, n)
            if c is INFINITE:
                continue
            base = Fraction(n, 1) / delta(d)
            x1 = ceil_root(base, d)
            for m in range(1, c + 1):
                assert ceil_root(m**d * base, d) == m * x1
            assert ceil_root((c + 1) ** d * base, d) != (c + 1) * x1


def test_infinite_iff_order_attains_maximum():
    for d in (1, 2, 3):
        dd = delta(d)
        for n in range(1, 400):
            expected = any(
                Fraction(n) == dd * Fraction(x**d)
                for x in range(1, ceil_root(Fraction(n, 1) / dd, d) + 1)
            )
            assert (tightness_coefficient(d, n) is INFINITE) == expected


def test_max_order_examples():
    assert max_order(3, 7) == 84
    assert max_order(2, 1) == 3
    assert max_order(1, 5) == 6
    assert max_order(3, 8) == 111
