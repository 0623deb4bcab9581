"""Seeded random formulas and schemas for property checks.

Node kinds are drawn uniformly while the depth budget lasts; atoms are
drawn uniformly from ``v_i = v_j`` and ``v_i = c``.
"""

from __future__ import annotations

import random
from typing import Sequence

from .syntax import Const, Eq, Exists, Formula, FormulaVar, Neg, Or, Schema, Var

__all__ = ["random_formula", "random_schema", "random_subset", "close_sentence"]


def random_subset(rng: random.Random, nvars: int) -> frozenset[int]:
    return frozenset(i for i in range(nvars) if rng.random() < 0.5)


def _atom(rng: random.Random, nvars: int, constants: Sequence[str]):
    i = rng.randrange(nvars)
    if constants and rng.random() < 0.5:
        return Eq(Var(i), Const(rng.choice(constants)))
    return Eq(Var(i), Var(rng.randrange(nvars)))


def _node(rng, depth, nvars, leaf, first_order):
    if depth <= 0:
        return leaf()
    kind = rng.choice(("leaf", "neg", "or", "exists"))
    J = frozenset() if first_order else None
    if kind == "leaf":
        return leaf()
    if kind == "neg":
        return Neg(_node(rng, depth - 1, nvars, leaf, first_order))
    if kind == "or":
        return Or(
            _node(rng, depth - 1, nvars, leaf, first_order),
            _node(rng, depth - 1, nvars, leaf, first_order),
            J if J is not None else random_subset(rng, nvars),
        )
    return Exists(
        rng.randrange(nvars),
        J if J is not None else random_subset(rng, nvars),
        _node(rng, depth - 1, nvars, leaf, first_order),
    )


def random_formula(rng: random.Random, depth: int, nvars: int,
                   constants: Sequence[str] = ("c0", "c1"), first_order: bool = False) -> Formula:
    """A core formula of depth at most ``depth``; ``first_order`` forces every J to be empty."""
    body = _node(rng, depth, nvars, lambda: _atom(rng, nvars, constants), first_order)
    return Formula(body, nvars)


def random_schema(rng: random.Random, depth: int, nvars: int, arity: int = 2) -> Schema:
    def leaf():
        if rng.random() < 0.75:
            return FormulaVar(rng.randrange(arity))
        return Eq(Var(rng.randrange(nvars)), Var(rng.randrange(nvars)))

    return Schema(_node(rng, depth, nvars, leaf, False), nvars, arity)


def close_sentence(rng: random.Random, phi: Formula) -> Formula:
    """Bind every variable with a randomly chosen quantifier prefix."""
    body = phi.body
    for n in reversed(range(phi.nvars)):
        J = random_subset(rng, phi.nvars)
        if rng.random() < 0.5:
            body = Exists(n, J, body)
        else:
            body = Neg(Exists(n, J, Neg(body)))
    return Formula(body, phi.nvars)
