import pytest

from ifglab import algebra as alg
from ifglab.enumeration import (
    REFERENCE_TABLE, SizeGuardError, count_double_suits, count_suits, count_table, dsuit_carrier,
    enumerate_suits,
)
from ifglab.model import space

import oracles


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_suit_count_matches_exhaustive_filter(m):
    assert count_suits(m) == len(oracles.brute_suits(m))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_double_suit_count_matches_pairing(m):
    assert count_double_suits(m) == len(oracles.brute_double_suits(m))


def test_double_suit_count_pairing_m4():
    suits = list(enumerate_suits(4))
    assert count_double_suits(4) == sum(1 for p in suits for q in suits if p & q == 1)


@pytest.mark.parametrize("m,nvars", [(1, 1), (2, 1), (3, 1), (2, 2)])
def test_enumerated_suits_are_distinct_suits(m, nvars):
    sp = space(m, nvars)
    suits = list(enumerate_suits(m, nvars))
    assert len(suits) == len(set(suits))
    assert all(s & 1 and sp.is_downward_closed(s) for s in suits)


def test_small_suits():
    assert sorted(enumerate_suits(1)) == [0b01, 0b11]
    assert list(enumerate_suits(0)) == [1]


def test_table():
    rows = count_table(5)
    assert [(r[0], r[2], r[3]) for r in rows] == [(m, *REFERENCE_TABLE[m]) for m in range(6)]
    assert [r[1] for r in rows] == [1, 2, 4, 8, 16, 32]


def test_two_variables_share_counts():
    assert count_suits(2, 2) == REFERENCE_TABLE[4][0]
    assert count_double_suits(2, 2) == REFERENCE_TABLE[4][1]


def test_guards():
    with pytest.raises(SizeGuardError):
        count_table(6)
    with pytest.raises(SizeGuardError):
        count_suits(6)
    with pytest.raises(SizeGuardError):
        list(enumerate_suits(3, 2))
    with pytest.raises(SizeGuardError):
        dsuit_carrier(5)


@pytest.mark.parametrize("m,size", [(1, 3), (2, 11), (3, 55)])
def test_carriers(m, size):
    c = dsuit_carrier(m)
    assert len(c) == size
    assert c == sorted(c, key=alg.Element.sort_key)
    assert all(alg.classify(x).is_double_suit for x in c)


def test_carrier_closed():
    c = set(dsuit_carrier(2))
    for x in c:
        assert alg.neg(x) in c and alg.cyl(0, (), x) in c
        for y in c:
            assert alg.plus(x, y) in c and alg.times(x, y, (0,)) in c


def test_display_rows():
    assert REFERENCE_TABLE[8][1] == 112260874496010913723317
