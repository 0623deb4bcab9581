import itertools
import math

import pytest

from ifglab import algebra as alg
from ifglab.algebra import Element
from ifglab.enumeration import dsuit_carrier
from ifglab.model import space
from ifglab.syntax import Cyl, Diagonal, Plus, TermVar, TNeg, Times

import oracles

N2 = alg.named_elements(2, 1)
N3 = alg.named_elements(3, 1)


def _Js(nvars):
    return [frozenset(c) for r in range(nvars + 1) for c in itertools.combinations(range(nvars), r)]


@pytest.mark.parametrize("m,nvars", [(2, 1), (3, 1)])
def test_plus_matches_oracle(m, nvars):
    carrier = dsuit_carrier(m, nvars)
    vals = oracles.valuations(m, nvars)
    for x in carrier[::3]:
        for y in carrier:
            for J in _Js(nvars):
                got = oracles.element_sets(alg.plus(x, y, J))
                xp, xm = oracles.element_sets(x)
                yp, ym = oracles.element_sets(y)
                assert got == oracles.pair_plus(xp, xm, yp, ym, J, vals)


def test_plus_matches_oracle_two_variables():
    carrier = dsuit_carrier(2, 2)
    vals = oracles.valuations(2, 2)
    for x, y in zip(carrier[::37], carrier[5::41]):
        for J in _Js(2):
            xp, xm = oracles.element_sets(x)
            yp, ym = oracles.element_sets(y)
            assert oracles.element_sets(alg.plus(x, y, J)) == oracles.pair_plus(xp, xm, yp, ym, J, vals)


@pytest.mark.parametrize("m,nvars", [(2, 1), (3, 1), (2, 2)])
def test_times_is_dual_of_plus(m, nvars):
    carrier = dsuit_carrier(m, nvars)[::7]
    for x in carrier:
        for y in carrier:
            for J in _Js(nvars):
                assert alg.times(x, y, J) == alg.neg(alg.plus(alg.neg(x), alg.neg(y), J))


@pytest.mark.parametrize("m,nvars", [(2, 1), (3, 1), (2, 2)])
def test_cyl_matches_oracle(m, nvars):
    sp = space(m, nvars)
    vals = oracles.valuations(m, nvars)
    teams = list(oracles.subsets(vals))
    for x in dsuit_carrier(m, nvars)[::5]:
        xp, xm = oracles.element_sets(x)
        for n in range(nvars):
            for J in _Js(nvars):
                got = oracles.element_sets(alg.cyl(n, J, x))
                plus = {V for V in teams if any(img in xp for img in oracles.choice_images(V, n, J, m))}
                minus = {W for W in teams if oracles.expand(W, n, m) in xm}
                assert got == (plus, minus)
    assert sp.size == len(vals)


def test_constants():
    sp = space(2, 2)
    d01 = alg.diagonal(0, 1, 2, 2)
    eq = sp.parse_team("{00, 11}")
    assert d01 == Element(2, 2, sp.powerset_family(eq), sp.powerset_family(sp.full ^ eq))
    assert alg.diagonal(0, 0, 2, 2) == alg.one(2, 2)
    assert alg.neg(alg.one(2, 2)) == alg.zero(2, 2)
    assert alg.neg(alg.omega(2, 2)) == alg.omega(2, 2)
    assert alg.constant("diag", 2, 2, 1, 0) == alg.diagonal(1, 0, 2, 2)
    with pytest.raises(alg.DimensionError):
        alg.diagonal(0, 2, 2, 2)
    with pytest.raises(ValueError):
        alg.constant("two", 2, 1)


def test_dimension_errors():
    with pytest.raises(alg.DimensionError):
        alg.plus(alg.one(2, 1), alg.one(3, 1))
    with pytest.raises(alg.DimensionError):
        alg.plus(alg.one(2, 1), alg.one(2, 1), {1})
    with pytest.raises(alg.DimensionError):
        alg.cyl(1, (), alg.one(2, 1))


def test_named_identities_over_two():
    n = N2
    assert alg.plus(n["A"], n["A"]) == n["1"]
    assert alg.plus(n["A"], n["A"], {0}) == n["A"]
    assert alg.plus(n["B"], n["B"]) == n["B"]
    assert alg.plus(n["B"], n["C"]) == n["1"]
    assert alg.plus(n["B"], n["C"], {0}) == n["A"]
    assert alg.plus(n["~B"], n["~C"]) == n["Omega"]
    for J in ((), (0,)):
        assert alg.cyl(0, J, n["0"]) == n["0"]
        assert alg.cyl(0, J, n["~A"]) == n["Omega"]
        assert alg.cyl(0, J, n["A"]) == n["1"]


def test_named_identities_over_three():
    n = N3
    assert alg.plus(n["B"], n["B"]) == n["A"]
    assert alg.plus(n["B"], n["B"], {0}) == n["B"]
    assert alg.plus(n["A"], n["A"]) == n["A"]


def test_classify():
    c = alg.classify(N2["[[v0 = c0]]"])
    assert c.is_double_suit and c.is_flat and c.is_perfect
    c = alg.classify(N2["B"])
    assert c.is_flat and not c.is_perfect
    c = alg.classify(N2["A"])
    assert c.is_double_suit and not c.is_flat
    bad = Element(2, 1, 0b1111, 0b1111)
    assert alg.classify(bad).is_suit_pair and not alg.classify(bad).is_double_suit
    assert not alg.classify(Element(2, 1, 0b0100, 1)).is_suit_pair
    perfect = [x for x in dsuit_carrier(2) if alg.classify(x).is_perfect]
    assert len(perfect) == 4


def test_order_counts_copies():
    assert alg.order(N2["1"]) == 1
    assert alg.order(N2["A"]) == 2
    assert alg.order(N2["B"]) == math.inf
    assert alg.order(N2["Omega"]) == math.inf
    sp = space(3, 1)
    three_points = Element(3, 1, sp.downward_closure([1, 2, 4]), 1)
    pair_point = Element(3, 1, sp.downward_closure([3, 4]), 1)
    assert alg.order(three_points) == 3
    assert alg.order(pair_point) == 2
    assert alg.nfold_join(three_points, 3) == alg.one(3, 1)
    with pytest.raises(ValueError):
        alg.nfold_join(pair_point, 0)


def test_leq_and_lattice():
    assert alg.leq(N2["0"], N2["Omega"]) and alg.leq(N2["Omega"], N2["1"])
    assert not alg.leq(N2["[[v0 = c0]]"], N2["Omega"])
    assert alg.join(N2["B"], N2["C"]) == N2["A"]
    assert alg.meet(N2["B"], N2["C"]) == N2["Omega"]


def test_hasse_edges_chain():
    chain = [N2["0"], N2["Omega"], N2["1"]]
    assert alg.hasse_edges(chain) == {(N2["0"], N2["Omega"]), (N2["Omega"], N2["1"])}


def test_full_cylindrification_order():
    sp = space(2, 2)
    x = alg.diagonal(0, 1, 2, 2)
    assert alg.full_cylindrification(x) == alg.cyl(0, (), alg.cyl(1, (), x))
    assert alg.full_cylindrification(x) == alg.one(2, 2)
    assert sp.size == 4


@pytest.mark.parametrize("m,nvars", [(2, 1), (3, 1), (2, 2)])
def test_format_parse_round_trip(m, nvars):
    for x in dsuit_carrier(m, nvars)[::11]:
        assert alg.parse_element(alg.format_element(x), m, nvars) == x
    assert alg.format_element(alg.omega(m, nvars)) == "<{{}} | {{}}>"


def test_parse_element_errors():
    with pytest.raises(ValueError):
        alg.parse_element("{{0}} | {{}}", 2, 1)
    with pytest.raises(ValueError):
        alg.parse_element("<{{0}} x | {{}}>", 2, 1)


def test_labels():
    assert alg.element_label(N2["A"]) == "A"
    assert alg.element_label(alg.diagonal(0, 0, 2, 1)) == "1"
    assert alg.element_label(alg.diagonal(0, 1, 2, 2)) == alg.format_element(alg.diagonal(0, 1, 2, 2))
    assert alg.element_label(N3["~B"]) == "~B"


def test_eval_term():
    t = Times(Plus(TNeg(TermVar(0)), TermVar(1)), Plus(TermVar(0), TNeg(TermVar(1))))
    assert alg.eval_term(t, [N2["[[v0 = c0]]"], N2["[[v0 = c0]]"]]) == N2["1"]
    assert alg.eval_term(Cyl(0, frozenset(), Diagonal(0, 0)), [], 2, 1) == N2["1"]
    with pytest.raises(ValueError):
        alg.eval_term(TermVar(2), [N2["A"]])
    with pytest.raises(ValueError):
        alg.eval_term(Diagonal(0, 0), [])


@pytest.mark.parametrize("m", [2, 3])
def test_kleene(m):
    rep = alg.check_kleene(dsuit_carrier(m))
    assert rep.ok and rep.violation is None and len(rep.checked) == 13


def test_kleene_needs_closed_carrier():
    with pytest.raises(ValueError):
        alg.check_kleene([N2["A"], N2["B"]])
