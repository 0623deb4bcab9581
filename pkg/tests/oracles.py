"""Brute-force reference implementations used to cross-check the library.

Everything here works on frozensets of valuation tuples and follows the
definitions literally, sharing no code with the package.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ifglab.syntax import And, Const, Eq, Exists, Forall, Iff, Implies, Neg, Or, Var


def valuations(m, nvars):
    return list(itertools.product(range(m), repeat=nvars))


def agree(a, b, J):
    return all(a[i] == b[i] for i in range(len(a)) if i not in J)


def subsets(team):
    team = sorted(team)
    for r in range(len(team) + 1):
        for c in itertools.combinations(team, r):
            yield frozenset(c)


def covers(team, J):
    """All (V1, V2) partitioning team with no J-agreeing pair split across cells."""
    out = []
    for v1 in subsets(team):
        v2 = team - v1
        if all(not agree(a, b, J) for a in v1 for b in v2):
            out.append((v1, v2))
    return out


def choice_images(team, n, J, m):
    """{V(n:f) : f: V -> A constant on J-agreeing valuations}."""
    team = sorted(team)
    out = set()
    for values in itertools.product(range(m), repeat=len(team)):
        f = dict(zip(team, values))
        if all(f[a] == f[b] for a in team for b in team if agree(a, b, J)):
            out.add(frozenset(a[:n] + (f[a],) + a[n + 1:] for a in team))
    return out


def expand(team, n, m):
    return frozenset(a[:n] + (b,) + a[n + 1:] for a in team for b in range(m))


class Oracle:
    """Trump semantics straight from the compositional clauses."""

    def __init__(self, structure, nvars):
        self.m = structure.universe_size
        self.nvars = nvars
        self.consts = dict(structure.constants)
        self.rels = {k: v[1] for k, v in structure.relations.items()}

    def val(self, t, a):
        return a[t.index] if isinstance(t, Var) else self.consts[t.name]

    def atom(self, node, a):
        if isinstance(node, Eq):
            return self.val(node.left, a) == self.val(node.right, a)
        return tuple(self.val(t, a) for t in node.args) in self.rels[node.name]

    def holds(self, node, team, pos):
        return self._holds(node, frozenset(team), pos)

    @lru_cache(maxsize=None)
    def _holds(self, node, team, pos):
        if isinstance(node, Neg):
            return self._holds(node.sub, team, not pos)
        if isinstance(node, Or):
            if pos:
                return any(self._holds(node.left, a, True) and self._holds(node.right, b, True)
                           for a, b in covers(team, node.J))
            return self._holds(node.left, team, False) and self._holds(node.right, team, False)
        if isinstance(node, And):
            return self._holds(Neg(Or(Neg(node.left), Neg(node.right), node.J)), team, pos)
        if isinstance(node, Implies):
            return self._holds(Or(Neg(node.left), node.right, node.J), team, pos)
        if isinstance(node, Iff):
            l, r, J = node.left, node.right, node.J
            return self._holds(And(Or(Neg(l), r, J), Or(Neg(r), l, J), J), team, pos)
        if isinstance(node, Exists):
            if pos:
                return any(self._holds(node.sub, img, True)
                           for img in choice_images(team, node.var, node.J, self.m))
            return self._holds(node.sub, expand(team, node.var, self.m), False)
        if isinstance(node, Forall):
            return self._holds(Neg(Exists(node.var, node.J, Neg(node.sub))), team, pos)
        if pos:
            return all(self.atom(node, a) for a in team)
        return not any(self.atom(node, a) for a in team)

    def meaning(self, phi):
        """(trumps, cotrumps) as sets of frozensets."""
        vals = valuations(self.m, self.nvars)
        teams = list(subsets(vals))
        plus = {t for t in teams if self.holds(phi.body, t, True)}
        minus = {t for t in teams if self.holds(phi.body, t, False)}
        return plus, minus


def tarski(structure, node, a):
    """Classical satisfaction of a first-order formula under valuation ``a``."""
    m = structure.universe_size
    consts = structure.constants

    def val(t):
        return a[t.index] if isinstance(t, Var) else consts[t.name]

    if isinstance(node, Eq):
        return val(node.left) == val(node.right)
    if isinstance(node, Neg):
        return not tarski(structure, node.sub, a)
    if isinstance(node, Or):
        return tarski(structure, node.left, a) or tarski(structure, node.right, a)
    if isinstance(node, And):
        return tarski(structure, node.left, a) and tarski(structure, node.right, a)
    if isinstance(node, Exists):
        return any(tarski(structure, node.sub, a[:node.var] + (b,) + a[node.var + 1:]) for b in range(m))
    if isinstance(node, Forall):
        return all(tarski(structure, node.sub, a[:node.var] + (b,) + a[node.var + 1:]) for b in range(m))
    raise TypeError(node)


def element_sets(x):
    """An Element's families as sets of frozensets of valuation tuples."""
    sp = x.space

    def fam(f):
        out = set()
        for t in range(sp.n_teams):
            if f >> t & 1:
                out.add(frozenset(sp.decode(i) for i in range(sp.size) if t >> i & 1))
        return out

    return fam(x.plus), fam(x.minus)


def all_families(points):
    """Every family of subsets of ``range(points)``, as frozensets of frozensets."""
    teams = list(subsets(range(points)))
    for r in range(len(teams) + 1):
        for c in itertools.combinations(teams, r):
            yield frozenset(c)


def is_suit(family):
    return bool(family) and all(s in family for t in family for s in subsets(t))


def brute_suits(points):
    return [f for f in all_families(points) if is_suit(f)]


def brute_double_suits(points):
    suits = brute_suits(points)
    empty = frozenset({frozenset()})
    return [(p, q) for p in suits for q in suits if p & q == empty]


def pair_plus(xp, xm, yp, ym, J, vals):
    """X +_J Y on set representations."""
    teams = list(subsets(vals))
    plus = {V for V in teams if any(a in xp and b in yp for a, b in covers(V, J))}
    return plus, xm & ym
