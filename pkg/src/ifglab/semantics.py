"""Trump semantics: truth and falsity of IFG formulas relative to teams."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import Element, classify
from .model import Structure, ValuationSpace, bits, space
from .syntax import (
    And, Const, Eq, Exists, Formula, Neg, Node, Or, Rel, SymbolError, Var,
    desugar, formula_for_team, validate,
)

__all__ = [
    "ResourceGuardError", "SentenceStatus", "Evaluator",
    "eval_plus", "eval_minus", "meaning", "sentence_status", "realize_double_suit",
    "DEFAULT_MEANING_GUARD", "DEFAULT_EVAL_GUARD",
]

DEFAULT_MEANING_GUARD = 12
DEFAULT_EVAL_GUARD = 20


class ResourceGuardError(RuntimeError):
    """The requested computation exceeds the configured size guard."""


class SentenceStatus(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDETERMINED = "undetermined"

    def __str__(self):
        return self.value


class Evaluator:
    """Decides ``A |=+ phi[V]`` and ``A |=- phi[W]`` for one formula.

    Results are memoised per (subformula, team, polarity) for the lifetime
    of the evaluator.
    """

    def __init__(self, structure: Structure, phi: Formula, guard: int = DEFAULT_EVAL_GUARD):
        validate(phi, structure)
        self.structure = structure
        self.phi = desugar(phi)
        self.space: ValuationSpace = space(structure.universe_size, phi.nvars)
        if self.space.size > guard:
            raise ResourceGuardError(
                f"m^N = {self.space.size} valuations exceeds the guard of {guard}"
            )
        self._memo: dict[tuple[int, int, bool], bool] = {}
        self._sat: dict[int, int] = {}

    def _atom_set(self, node) -> int:
        key = id(node)
        if key not in self._sat:
            sp = self.space
            consts = self.structure.constants

            def val(t, entries):
                return entries[t.index] if isinstance(t, Var) else consts[t.name]

            out = 0
            for i in range(sp.size):
                a = sp.decode(i)
                if isinstance(node, Eq):
                    ok = val(node.left, a) == val(node.right, a)
                else:
                    ok = tuple(val(t, a) for t in node.args) in self.structure.relations[node.name][1]
                if ok:
                    out |= 1 << i
            self._sat[key] = out
        return self._sat[key]

    def holds(self, node: Node, team: int, positive: bool) -> bool:
        key = (id(node), team, positive)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        sp = self.space
        if isinstance(node, (Eq, Rel)):
            sat = self._atom_set(node)
            result = (team & ~sat == 0) if positive else (team & sat == 0)
        elif isinstance(node, Neg):
            result = self.holds(node.sub, team, not positive)
        elif isinstance(node, Or):
            if positive:
                result = any(
                    self.holds(node.left, v1, True) and self.holds(node.right, v2, True)
                    for v1, v2 in sp.saturated_disjoint_covers(team, node.J)
                )
            else:
                result = self.holds(node.left, team, False) and self.holds(node.right, team, False)
        elif isinstance(node, Exists):
            if positive:
                result = any(
                    self.holds(node.sub, img, True)
                    for img in sp.choice_images(team, node.var, node.J)
                )
            else:
                result = self.holds(node.sub, sp.expand(team, node.var), False)
        else:
            raise TypeError(f"unexpected node {type(node).__name__}")
        self._memo[key] = result
        return result

    def plus(self, team: int) -> bool:
        return self.holds(self.phi.body, team, True)

    def minus(self, team: int) -> bool:
        return self.holds(self.phi.body, team, False)


def _check_team(sp: ValuationSpace, team: int) -> None:
    if team < 0 or team >> sp.size:
        raise ValueError(f"team has valuations outside {sp}")


def eval_plus(structure: Structure, phi: Formula, team: int, guard: int = DEFAULT_EVAL_GUARD) -> bool:
    """``A |=+ phi[V]``: ``V`` is a winning team (trump) for ``phi``."""
    ev = Evaluator(structure, phi, guard)
    _check_team(ev.space, team)
    return ev.plus(team)


def eval_minus(structure: Structure, phi: Formula, team: int, guard: int = DEFAULT_EVAL_GUARD) -> bool:
    """``A |=- phi[W]``: ``W`` is a losing team (cotrump) for ``phi``."""
    ev = Evaluator(structure, phi, guard)
    _check_team(ev.space, team)
    return ev.minus(team)


def meaning(structure: Structure, phi: Formula, guard: int = DEFAULT_MEANING_GUARD) -> Element:
    """``<trumps, cotrumps>`` of ``phi``, by checking every team."""
    sp = space(structure.universe_size, phi.nvars)
    if sp.size > guard:
        raise ResourceGuardError(
            f"meaning enumerates 2^{sp.size} teams; m^N = {sp.size} exceeds the guard of {guard}"
        )
    ev = Evaluator(structure, phi, guard=max(guard, sp.size))
    p = m_ = 0
    for V in sp.all_teams:
        if ev.plus(V):
            p |= 1 << V
        if ev.minus(V):
            m_ |= 1 << V
    return Element(sp.m, sp.nvars, p, m_)


def sentence_status(structure: Structure, phi: Formula, guard: int = DEFAULT_EVAL_GUARD) -> SentenceStatus:
    """Truth value of ``phi`` on the full team ``^N A``."""
    ev = Evaluator(structure, phi, guard)
    full = ev.space.full
    if ev.plus(full):
        return SentenceStatus.TRUE
    if ev.minus(full):
        return SentenceStatus.FALSE
    return SentenceStatus.UNDETERMINED


def _join_all(formulas: list[Formula], J: frozenset[int], nvars: int) -> Formula:
    acc = formulas[0].body
    for f in formulas[1:]:
        acc = Or(acc, f.body, J)
    return Formula(acc, nvars)


def realize_double_suit(x: Element, structure: Structure) -> Formula:
    """A formula over ``structure`` whose meaning is the double suit ``x``.

    Writing ``V0..Vk`` for the maximal trumps of ``x`` and ``W0..Wl`` for its
    maximal cotrumps, the result is ::

        (phi \\/N chi) /\\N ((psi /\\N chi) \\/N phi_V)

    with ``phi = phi_V0 \\/N ... \\/N phi_Vk``, ``psi = ~(phi_W0 \\/N ...)``,
    ``phi_V`` the first-order formula for ``V = V0 u ... u Vk`` and ``chi`` a
    formula meaning Omega, ``E v0/{} ~ (v0 = c \\/N ~ (v0 = c))``.
    """
    if (structure.universe_size, ) != (x.m, ):
        raise ValueError(f"element over m={x.m} but structure has {structure.universe_size} elements")
    if not classify(x).is_double_suit:
        raise ValueError(f"{x} is not a double suit")
    if not structure.fully_named:
        raise SymbolError("every element of the structure must be named by a constant")
    if x.m < 2:
        raise ValueError("realisation needs at least two elements")
    sp = x.space
    N = x.nvars
    full = frozenset(range(N))
    trumps = sp.maximal_teams(x.plus)
    cotrumps = sp.maximal_teams(x.minus)
    phi = _join_all([formula_for_team(V, structure, N) for V in trumps], full, N)
    psi_inner = _join_all([formula_for_team(W, structure, N) for W in cotrumps], full, N)
    psi = Neg(psi_inner.body)
    c = Const(structure.name_of(0))
    atom = Eq(Var(0), c)
    chi = Exists(0, frozenset(), Neg(Or(atom, Neg(atom), full)))
    support = 0
    for V in trumps:
        support |= V
    phi_v = formula_for_team(support, structure, N).body
    body = And(Or(phi.body, chi, full), Or(And(psi, chi, full), phi_v, full), full)
    return Formula(body, N)
