import random

import pytest

from ifglab import algebra as alg
from ifglab.enumeration import dsuit_carrier
from ifglab.generators import close_sentence, random_formula
from ifglab.model import make_structure, space
from ifglab.semantics import (
    Evaluator, ResourceGuardError, SentenceStatus, eval_minus, eval_plus, meaning,
    realize_double_suit, sentence_status,
)
from ifglab.syntax import SymbolError, formula_for_team, parse

import oracles

TWO = make_structure("2")
THREE = make_structure("3")


def as_sets(x):
    return oracles.element_sets(x)


@pytest.mark.parametrize("seed", range(40))
def test_meaning_matches_oracle(seed):
    rng = random.Random(seed)
    st, nv = rng.choice([(TWO, 1), (TWO, 2), (THREE, 1)])
    phi = random_formula(rng, 3, nv, constants=sorted(st.constants))
    got = as_sets(meaning(st, phi))
    want = oracles.Oracle(st, nv).meaning(phi)
    assert got == want, str(phi)


def test_sugar_matches_oracle():
    for text in ["(v0 = c0 /\\{v0} E v1/{v0} v1 = v0)", "A v1/{0} (v0 = v1 ->{1} v1 = c1)",
                 "(v0 = c0 <->{} v1 = c1)", "(v0 = c0 <->{v0,v1} v1 = c1)"]:
        phi = parse(text, 2)
        assert as_sets(meaning(TWO, phi)) == oracles.Oracle(TWO, 2).meaning(phi)


@pytest.mark.parametrize("seed", range(40))
def test_first_order_meanings_are_tarskian(seed):
    rng = random.Random(seed)
    nv = rng.choice((1, 2))
    phi = random_formula(rng, 3, nv, first_order=True)
    x = meaning(TWO, phi)
    sp = x.space
    sat = sp.team(i for i in range(sp.size) if oracles.tarski(TWO, phi.body, sp.decode(i)))
    assert x == alg.Element(2, nv, sp.powerset_family(sat), sp.powerset_family(sp.full ^ sat))


def test_matching_pennies():
    assert sentence_status(TWO, parse("A v0/{} E v1/{} v0 != v1")) is SentenceStatus.TRUE
    ifg = parse("A v0/{} E v1/{v0} v0 != v1")
    assert sentence_status(TWO, ifg) is SentenceStatus.UNDETERMINED
    assert sentence_status(make_structure("1"), ifg) is SentenceStatus.FALSE
    assert meaning(TWO, ifg) == alg.omega(2, 2)
    open_phi = parse("E v1/{v0} v0 != v1")
    sp = space(2, 2)
    assert eval_plus(TWO, open_phi, sp.parse_team("{00, 01}"))
    assert not eval_plus(TWO, open_phi, sp.full)
    assert not eval_minus(TWO, open_phi, sp.full)


def test_relations():
    st = make_structure('{"universe": 3, "constants": {"a": 0}, "relations": {"Lt": {"arity": 2, '
                        '"tuples": [[0, 1], [0, 2], [1, 2]]}}}')
    assert sentence_status(st, parse("A v0/{} E v1/{} (Lt(v0, v1) \\/{} v0 = v1)")) is SentenceStatus.TRUE
    assert sentence_status(st, parse("A v0/{} E v1/{} Lt(v0, v1)")) is SentenceStatus.FALSE
    phi = parse("E v1/{} Lt(v0, v1)")
    x = meaning(st, phi)
    sp = x.space
    assert sp.maximal_teams(x.plus) == [sp.team(v for v in range(sp.size) if sp.decode(v)[0] < 2)]
    orc = oracles.Oracle(st, 2)
    for V in range(sp.n_teams):
        if bin(V).count("1") <= 4:
            team = frozenset(sp.decode(i) for i in range(sp.size) if V >> i & 1)
            assert bool(x.plus >> V & 1) == orc.holds(phi.body, team, True)
            assert bool(x.minus >> V & 1) == orc.holds(phi.body, team, False)
    with pytest.raises(SymbolError):
        meaning(st, parse("Lt(v0)"))


def test_empty_team_is_trump_and_cotrump():
    for text in ["v0 = c0", "~ v0 = v0", "E v0/{} v0 = c1"]:
        phi = parse(text)
        assert eval_plus(TWO, phi, 0) and eval_minus(TWO, phi, 0)


def test_guards():
    with pytest.raises(ResourceGuardError):
        meaning(TWO, parse("v0 = v0", 4), guard=12)
    with pytest.raises(ResourceGuardError):
        Evaluator(THREE, parse("v0 = v0", 3), guard=20)
    assert sentence_status(TWO, parse("A v0/{} A v1/{} A v2/{} A v3/{} v0 = v0")) is SentenceStatus.TRUE


def test_formula_for_team_meanings():
    for V in range(8):
        f = formula_for_team(V, THREE, 1)
        sp = space(3, 1)
        assert meaning(THREE, f) == alg.Element(3, 1, sp.powerset_family(V), sp.powerset_family(sp.full ^ V))
    sp = space(2, 2)
    V = sp.parse_team("{01, 11}")
    assert meaning(TWO, formula_for_team(V, TWO, 2)) == alg.Element(
        2, 2, sp.powerset_family(V), sp.powerset_family(sp.full ^ V))


@pytest.mark.parametrize("m", [2, 3])
def test_every_double_suit_is_realised(m):
    st = make_structure(str(m))
    for x in dsuit_carrier(m):
        assert meaning(st, realize_double_suit(x, st)) == x


def test_realise_two_variables_sample():
    rng = random.Random(1)
    carrier = dsuit_carrier(2, 2)
    for x in rng.sample(carrier, 15):
        assert meaning(TWO, realize_double_suit(x, TWO)) == x


def test_undetermined_filler():
    # the existential filler used by the realisation means Omega
    assert meaning(TWO, parse("E v0/{} ~ (v0 = c0 \\/{v0} ~ v0 = c0)")) == alg.omega(2, 1)
    # the bare disjunction over the full index set keeps the trumps {0} and {1}
    names = alg.named_elements(2, 1)
    assert meaning(TWO, parse("(v0 = c0 \\/{0} v0 != c0)")) == names["A"]


def test_realise_preconditions():
    with pytest.raises(ValueError):
        realize_double_suit(alg.Element(2, 1, 0b1111, 0b1111), TWO)
    with pytest.raises(SymbolError):
        realize_double_suit(alg.omega(2, 1), make_structure('{"universe": 2, "constants": {"a": 0}}'))


@pytest.mark.parametrize("seed", range(30))
def test_sentence_trichotomy(seed):
    rng = random.Random(seed)
    nv = rng.choice((1, 2))
    sent = close_sentence(rng, random_formula(rng, 3, nv))
    x = meaning(TWO, sent)
    assert x in (alg.zero(2, nv), alg.omega(2, nv), alg.one(2, nv))
    status = sentence_status(TWO, sent)
    assert {SentenceStatus.TRUE: alg.one, SentenceStatus.FALSE: alg.zero,
            SentenceStatus.UNDETERMINED: alg.omega}[status](2, nv) == x
