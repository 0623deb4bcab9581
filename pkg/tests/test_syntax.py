import random

import pytest

from ifglab.generators import random_formula, random_schema
from ifglab.model import make_structure
from ifglab.syntax import (
    Const, Cyl, Diagonal, Eq, Exists, Forall, FormulaVar, Iff, Neg, Or, ParseError, Plus,
    SymbolError, TermVar, TNeg, Var, desugar, formula_for_team, instantiate, is_core, parse,
    parse_schema, pretty, schema_to_term, validate,
)


def test_parse_matching_pennies():
    phi = parse("A v0/{} E v1/{v0} v0 != v1")
    assert phi.nvars == 2
    assert phi.body == Forall(0, frozenset(), Exists(1, frozenset({0}), Neg(Eq(Var(0), Var(1)))))


def test_independence_set_spellings():
    a = parse("(v0 = c0 \\/{v0} v0 = c1)")
    b = parse("(v0 = c0 \\//{0} v0 = c1)".replace("//", "/"))
    assert a == b
    assert a.body.J == frozenset({0})


def test_default_and_padded_nvars():
    assert parse("c0 = c1").nvars == 1
    assert parse("v2 = v0").nvars == 3
    assert parse("v0 = v0", nvars=3).nvars == 3
    with pytest.raises(ValueError):
        parse("v2 = v0", nvars=2)
    with pytest.raises(ValueError):
        parse("E v2/{} v0=v0", nvars=2)
    with pytest.raises(ValueError):
        parse("E v0/{v3} v0=v0", nvars=2)


@pytest.mark.parametrize("text", [
    "A v0/{} E v1/{v0} v0 != v1",
    "(v0 = c0 \\/{v0} ~ (v0 = c0))",
    "((v0 = v1 /\\{} R(v0, c1)) ->{1} E v0/{1} v1 = c0)",
    "(v0 = v0 <->{0,1} ~ v1 = v1)",
])
def test_pretty_round_trip(text):
    phi = parse(text)
    assert parse(pretty(phi), phi.nvars) == phi


@pytest.mark.parametrize("seed", range(30))
def test_random_round_trip(seed):
    rng = random.Random(seed)
    phi = random_formula(rng, 5, rng.choice((1, 2, 3)))
    assert parse(pretty(phi), phi.nvars) == phi


@pytest.mark.parametrize("bad,pos", [("(v0 = ", 5), ("E x/{} v0 = v0", 2), ("v0 = v1 v0", 8), ("(v0 = v0 \\/{v9 v0 = v0)", None)])
def test_parse_errors(bad, pos):
    with pytest.raises(ParseError) as info:
        parse(bad)
    if pos is not None:
        assert info.value.pos == pos


def test_formula_variables_only_in_schemas():
    with pytest.raises(ParseError):
        parse("(@0 \\/{} v0 = v0)")
    xi = parse_schema("(@0 \\/{} ~ @1)")
    assert xi.arity == 2
    with pytest.raises(ValueError):
        parse_schema("(@0 \\/{} v0 = c0)")  # schemas only allow v_i = v_j atoms


def test_validate_symbols():
    two = make_structure("2")
    validate(parse("v0 = c1"), two)
    with pytest.raises(SymbolError):
        validate(parse("v0 = c7"), two)
    with pytest.raises(SymbolError):
        validate(parse("R(v0)"), two)


def test_desugar_is_core():
    phi = parse("(A v0/{} v0 = c0 <->{0} (v0 = c1 /\\{} v0 = c0))")
    assert not is_core(phi.body)
    d = desugar(phi)
    assert is_core(d.body)
    assert desugar(parse("(v0 = c0 ->{} v0 = c1)")).body == Or(
        Neg(Eq(Var(0), Const("c0"))), Eq(Var(0), Const("c1")), frozenset())


def test_instantiate_and_term():
    xi = parse_schema("E v0/{0} ~ (@0 \\/{} v0 = v0)")
    phi = parse("v0 = c0")
    inst = instantiate(xi, [phi])
    assert inst.body == Exists(0, frozenset({0}), Neg(Or(Eq(Var(0), Const("c0")), Eq(Var(0), Var(0)), frozenset())))
    assert schema_to_term(xi) == Cyl(0, frozenset({0}), TNeg(Plus(TermVar(0), Diagonal(0, 0), frozenset())))
    with pytest.raises(ValueError):
        instantiate(xi, [phi, phi])


def test_random_schema_is_core():
    rng = random.Random(3)
    for _ in range(20):
        xi = random_schema(rng, 3, 2)
        assert is_core(xi.body)
        schema_to_term(xi)


def test_formula_for_team_text():
    three = make_structure("3")
    f = formula_for_team(0b011, three, 1)
    assert pretty(f) == "(v0 = c0 \\/{} v0 = c1)"
    assert pretty(formula_for_team(0, three, 1)) == "~ (v0 = v0)"
    with pytest.raises(SymbolError):
        formula_for_team(1, make_structure('{"universe": 2}'), 1)


def test_iff_node():
    phi = parse("(v0 = c0 <->{} v0 = c1)")
    assert isinstance(phi.body, Iff)
    assert isinstance(parse_schema("@0").body, FormulaVar)


@pytest.mark.parametrize("seed", range(20))
def test_desugar_preserves_dimension_and_indices(seed):
    from ifglab.syntax import used_indices
    rng = random.Random(seed)
    phi = parse(pretty(random_formula(rng, 4, 3)).replace("\\/{}", "/\\{}", 1), 3)
    d = desugar(phi)
    assert d.nvars == phi.nvars
    assert used_indices(d.body) == used_indices(phi.body)
    assert desugar(d) == d


@pytest.mark.parametrize("seed", range(20))
def test_instantiate_commutes_with_desugar(seed):
    rng = random.Random(seed)
    xi = random_schema(rng, 3, 2)
    phis = [parse(pretty(random_formula(rng, 2, 2)).replace("E ", "A ", 1), 2) for _ in range(2)]
    assert desugar(instantiate(xi, phis)) == instantiate(xi, [desugar(p) for p in phis])


def test_pretty_examples():
    assert pretty(parse("~ v0 = v1")) == "~ (v0 = v1)"
    assert pretty(parse("(v0 = c0 <->{v0} v0 = c1)")) == "(v0 = c0 <->{v0} v0 = c1)"
