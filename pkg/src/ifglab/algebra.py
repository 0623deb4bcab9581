"""The IFG-cylindric power set algebra over ``^N A``.

An :class:`Element` is a pair of families of teams.  A family is an ``int``
bit vector indexed by team (itself a bit vector over valuations), so
``family >> team & 1`` tests membership.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .model import ValuationSpace, bits, space
from .syntax import Cyl, Diagonal, Plus, Term, TermVar, Times, TNeg

__all__ = [
    "Element", "Classification", "KleeneReport", "DimensionError",
    "zero", "one", "omega", "diagonal", "constant", "full_set",
    "neg", "plus", "times", "cyl", "full_cylindrification", "join", "meet",
    "leq", "classify", "nfold_join", "order", "eval_term", "check_kleene",
    "make_element", "format_element", "parse_element", "named_elements", "element_label",
    "hasse_edges", "format_family",
]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    """``<X+, X->``: two families of teams over ``(m, N)``."""

    m: int
    nvars: int
    plus: int
    minus: int

    @property
    def space(self) -> ValuationSpace:
        return space(self.m, self.nvars)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.m, self.nvars)

    def sort_key(self) -> tuple[int, int]:
        return (self.plus, self.minus)

    def __repr__(self):
        return f"Element{self.dims}{format_element(self)}"

    def __str__(self):
        return format_element(self)


def _same_dims(*xs: Element) -> None:
    if len({x.dims for x in xs}) > 1:
        raise DimensionError(f"dimension mismatch: {[x.dims for x in xs]}")


def full_set(nvars: int) -> frozenset[int]:
    return frozenset(range(nvars))


def _J(J, nvars: int) -> frozenset[int]:
    J = frozenset(J)
    if any(not 0 <= j < nvars for j in J):
        raise DimensionError(f"independence set {sorted(J)} not contained in N={nvars}")
    return J


def make_element(m: int, nvars: int, plus_teams: Iterable[int], minus_teams: Iterable[int]) -> Element:
    """Element whose coordinates are the downward closures of the given teams."""
    sp = space(m, nvars)
    return Element(m, nvars, sp.downward_closure(plus_teams), sp.downward_closure(minus_teams))


# -- constants ---------------------------------------------------------------

def zero(m: int, nvars: int) -> Element:
    sp = space(m, nvars)
    return Element(m, nvars, 1, sp.powerset_family(sp.full))


def one(m: int, nvars: int) -> Element:
    sp = space(m, nvars)
    return Element(m, nvars, sp.powerset_family(sp.full), 1)


def omega(m: int, nvars: int) -> Element:
    return Element(m, nvars, 1, 1)


def diagonal(i: int, j: int, m: int, nvars: int) -> Element:
    if not (0 <= i < nvars and 0 <= j < nvars):
        raise DimensionError(f"diagonal D{i}{j} out of range for N={nvars}")
    sp = space(m, nvars)
    eq = sp.team(k for k in range(sp.size) if sp.digit(k, i) == sp.digit(k, j))
    return Element(m, nvars, sp.powerset_family(eq), sp.powerset_family(sp.full ^ eq))


def constant(kind: str, m: int, nvars: int, i: int | None = None, j: int | None = None) -> Element:
    if kind == "zero":
        return zero(m, nvars)
    if kind == "one":
        return one(m, nvars)
    if kind == "omega":
        return omega(m, nvars)
    if kind == "diag":
        return diagonal(i, j, m, nvars)
    raise ValueError(f"unknown constant kind {kind!r}")


# -- operations --------------------------------------------------------------

def neg(x: Element) -> Element:
    return Element(x.m, x.nvars, x.minus, x.plus)


def _cover_join(sp: ValuationSpace, f: int, g: int, J: frozenset[int]) -> int:
    # teams V with V = V1 cup_J V2, V1 in f, V2 in g
    out = 0
    for V in sp.all_teams:
        for v1, v2 in sp.saturated_disjoint_covers(V, J):
            if f >> v1 & 1 and g >> v2 & 1:
                out |= 1 << V
                break
    return out


@lru_cache(maxsize=None)
def _plus(x: Element, y: Element, J: frozenset[int]) -> Element:
    return Element(x.m, x.nvars, _cover_join(x.space, x.plus, y.plus, J), x.minus & y.minus)


@lru_cache(maxsize=None)
def _times(x: Element, y: Element, J: frozenset[int]) -> Element:
    return Element(x.m, x.nvars, x.plus & y.plus, _cover_join(x.space, x.minus, y.minus, J))


def plus(x: Element, y: Element, J: Iterable[int] = ()) -> Element:
    """``X +_J Y``."""
    _same_dims(x, y)
    return _plus(x, y, _J(J, x.nvars))


def times(x: Element, y: Element, J: Iterable[int] = ()) -> Element:
    """``X ._J Y``, computed directly (dual of :func:`plus`)."""
    _same_dims(x, y)
    return _times(x, y, _J(J, x.nvars))


def join(x: Element, y: Element) -> Element:
    return plus(x, y, full_set(x.nvars))


def meet(x: Element, y: Element) -> Element:
    return times(x, y, full_set(x.nvars))


@lru_cache(maxsize=None)
def _cyl(n: int, J: frozenset[int], x: Element) -> Element:
    sp = x.space
    p = 0
    m_ = 0
    for V in sp.all_teams:
        if any(x.plus >> img & 1 for img in sp.choice_images(V, n, J)):
            p |= 1 << V
        if x.minus >> sp.expand(V, n) & 1:
            m_ |= 1 << V
    return Element(x.m, x.nvars, p, m_)


def cyl(n: int, J: Iterable[int], x: Element) -> Element:
    """Cylindrification ``C_{n,J}(X)``."""
    if not 0 <= n < x.nvars:
        raise DimensionError(f"variable index {n} out of range for N={x.nvars}")
    return _cyl(n, _J(J, x.nvars), x)


def full_cylindrification(x: Element, Js: Sequence[Iterable[int]] | None = None) -> Element:
    """``C_{0,J0} ... C_{N-1,J(N-1)}(X)``; the innermost is ``C_{N-1}``."""
    if Js is None:
        Js = [()] * x.nvars
    for n in reversed(range(x.nvars)):
        x = cyl(n, Js[n], x)
    return x


def leq(x: Element, y: Element) -> bool:
    """Lattice order: ``X+ <= Y+`` and ``Y- <= X-``."""
    _same_dims(x, y)
    return x.plus & ~y.plus == 0 and y.minus & ~x.minus == 0


@dataclass(frozen=True)
class Classification:
    is_suit_pair: bool
    is_double_suit: bool
    is_flat: bool
    is_perfect: bool


def _is_suit(sp: ValuationSpace, family: int) -> bool:
    return family != 0 and sp.is_downward_closed(family)


def classify(x: Element) -> Classification:
    sp = x.space
    suit_pair = _is_suit(sp, x.plus) and _is_suit(sp, x.minus)
    double = suit_pair and x.plus & x.minus == 1
    support = 0
    for t in bits(x.plus):
        support |= t
    flat = double and x.plus == sp.powerset_family(support)
    perfect = flat and x.minus == sp.powerset_family(sp.full ^ support)
    return Classification(suit_pair, double, flat, perfect)


def nfold_join(x: Element, k: int) -> Element:
    """``X +_{} X +_{} ... +_{} X`` with ``k`` copies, folded from the left."""
    if k < 1:
        raise ValueError("need at least one copy")
    acc = x
    for _ in range(k - 1):
        acc = plus(acc, x, ())
    return acc


def order(x: Element) -> int | float:
    """Least number of copies whose ``+_{}`` join is 1, or ``math.inf``.

    Stops as soon as the running join repeats, which is sound because the
    sequence is monotone for double suits.
    """
    top = one(x.m, x.nvars)
    acc = x
    seen = {acc}
    k = 1
    while acc != top:
        acc = plus(acc, x, ())
        if acc in seen:
            return math.inf
        seen.add(acc)
        k += 1
    return k


def eval_term(t: Term, env: Sequence[Element], m: int | None = None, nvars: int | None = None) -> Element:
    """Evaluate a term with ``X_i`` bound to ``env[i]``."""
    if env:
        _same_dims(*env)
        m, nvars = env[0].dims
    if m is None or nvars is None:
        raise ValueError("dimensions are needed when the environment is empty")

    def ev(node):
        if isinstance(node, TermVar):
            if not 0 <= node.index < len(env):
                raise ValueError(f"unbound term variable X{node.index}")
            return env[node.index]
        if isinstance(node, Diagonal):
            return diagonal(node.i, node.j, m, nvars)
        if isinstance(node, TNeg):
            return neg(ev(node.sub))
        if isinstance(node, Plus):
            return plus(ev(node.left), ev(node.right), node.J)
        if isinstance(node, Times):
            return times(ev(node.left), ev(node.right), node.J)
        if isinstance(node, Cyl):
            return cyl(node.var, node.J, ev(node.sub))
        raise TypeError(f"not a term: {node!r}")

    return ev(t)


# -- Kleene reduct -----------------------------------------------------------

@dataclass
class KleeneReport:
    ok: bool
    checked: list[str]
    violation: str | None = None

    def __bool__(self):
        return self.ok


def check_kleene(carrier: Sequence[Element]) -> KleeneReport:
    """Check the De Morgan and Kleene axioms for ``(0, 1, ~, +_N, ._N)``.

    Every axiom is quantified over all tuples of the carrier.  Raises
    ``ValueError`` if the carrier is not closed under the reduct operations.
    """
    carrier = list(dict.fromkeys(carrier))
    if not carrier:
        raise ValueError("empty carrier")
    _same_dims(*carrier)
    m, nvars = carrier[0].dims
    index = {x: i for i, x in enumerate(carrier)}
    n = len(carrier)

    def idx(x):
        try:
            return index[x]
        except KeyError:
            raise ValueError(f"carrier not closed: {format_element(x)} missing") from None

    z, o = idx(zero(m, nvars)), idx(one(m, nvars))
    N_ = np.array([idx(neg(x)) for x in carrier])
    Jn = np.array([[idx(join(x, y)) for y in carrier] for x in carrier])
    Mt = np.array([[idx(meet(x, y)) for y in carrier] for x in carrier])
    ar = np.arange(n)
    name = carrier.__getitem__
    checked: list[str] = []

    def fail(axiom, where):
        args = ", ".join(format_element(name(int(i))) for i in where)
        return KleeneReport(False, checked, f"{axiom} fails at ({args})")

    pairs = [
        ("join commutative", Jn, Jn.T),
        ("meet commutative", Mt, Mt.T),
        ("absorption x+(x.y)=x", Jn[ar[:, None], Mt], np.broadcast_to(ar[:, None], (n, n))),
        ("absorption x.(x+y)=x", Mt[ar[:, None], Jn], np.broadcast_to(ar[:, None], (n, n))),
        ("De Morgan ~(x+y)=~x.~y", N_[Jn], Mt[N_[:, None], N_[None, :]]),
    ]
    singles = [
        ("bound x+0=x", Jn[:, z], ar),
        ("bound x.1=x", Mt[:, o], ar),
        ("involution ~~x=x", N_[N_], ar),
    ]
    for axiom, lhs, rhs in singles:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return fail(axiom, bad[0])
        checked.append(axiom)
    for axiom, lhs, rhs in pairs:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return fail(axiom, bad[0])
        checked.append(axiom)
    triples = [
        ("join associative", Jn[Jn[:, :, None], ar[None, None, :]], Jn[ar[:, None, None], Jn[None, :, :]]),
        ("meet associative", Mt[Mt[:, :, None], ar[None, None, :]], Mt[ar[:, None, None], Mt[None, :, :]]),
        ("distributive x.(y+z)=(x.y)+(x.z)", Mt[ar[:, None, None], Jn[None, :, :]], Jn[Mt[:, :, None], Mt[:, None, :]]),
        ("distributive x+(y.z)=(x+y).(x+z)", Jn[ar[:, None, None], Mt[None, :, :]], Mt[Jn[:, :, None], Jn[:, None, :]]),
    ]
    for axiom, lhs, rhs in triples:
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return fail(axiom, bad[0])
        checked.append(axiom)
    # x.~x <= y+~y, with a <= b iff a+b = b
    low = Mt[ar, N_]
    high = Jn[ar, N_]
    lhs = Jn[low[:, None], high[None, :]]
    bad = np.argwhere(lhs != high[None, :])
    if len(bad):
        return fail("Kleene x.~x <= y+~y", bad[0])
    checked.append("Kleene x.~x <= y+~y")
    return KleeneReport(True, checked)


# -- names and text ----------------------------------------------------------

def format_family(sp: ValuationSpace, family: int) -> str:
    return "{" + ", ".join(sp.format_team(t) for t in sp.maximal_teams(family)) + "}"


def format_element(x: Element) -> str:
    """Canonical text ``<{max trumps} | {max cotrumps}>``."""
    sp = x.space
    return f"<{format_family(sp, x.plus)} | {format_family(sp, x.minus)}>"


_ELEM = re.compile(r"\s*<(?P<plus>.*)\|(?P<minus>.*)>\s*\Z", re.S)


def _parse_family(sp: ValuationSpace, text: str) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"family must be written as {{...}}, got {text!r}")
    inner = text[1:-1]
    teams = re.findall(r"\{[^{}]*\}", inner)
    if re.sub(r"\{[^{}]*\}|[\s,]", "", inner):
        raise ValueError(f"malformed family {text!r}")
    return sp.downward_closure(sp.parse_team(t) for t in teams)


def parse_element(text: str, m: int, nvars: int) -> Element:
    """Inverse of :func:`format_element` (families given by maximal teams)."""
    mt = _ELEM.match(text)
    if not mt:
        raise ValueError(f"not an element literal: {text!r}")
    sp = space(m, nvars)
    return Element(m, nvars, _parse_family(sp, mt["plus"]), _parse_family(sp, mt["minus"]))


@lru_cache(maxsize=None)
def _named(m: int, nvars: int) -> tuple[tuple[str, Element], ...]:
    sp = space(m, nvars)
    out: dict[str, Element] = {"0": zero(m, nvars), "1": one(m, nvars), "Omega": omega(m, nvars)}
    for i in range(nvars):
        for j in range(nvars):
            out[f"D{i}{j}"] = diagonal(i, j, m, nvars)
    P = sp.powerset_family
    if (m, nvars) == (2, 1):
        out["A"] = Element(2, 1, P(0b01) | P(0b10), 1)
        out["B"] = Element(2, 1, P(0b01), 1)
        out["C"] = Element(2, 1, P(0b10), 1)
        out["[[v0 = c0]]"] = Element(2, 1, P(0b01), P(0b10))
        out["[[v0 = c1]]"] = Element(2, 1, P(0b10), P(0b01))
    elif (m, nvars) == (3, 1):
        out["A"] = Element(3, 1, P(0b011), 1)
        out["B"] = Element(3, 1, P(0b001) | P(0b010), 1)
    for key in [k for k in out if k in "ABC"]:
        out["~" + key] = neg(out[key])
    return tuple(out.items())


def named_elements(m: int, nvars: int) -> Mapping[str, Element]:
    """Aliases ``0, 1, Omega, Dij`` plus the lettered elements of the builtin algebras.

    Over ``{0,1}`` with N=1: ``A = <P{0} u P{1}, {0}>``, ``B = <P{0}, {0}>``,
    ``C = <P{1}, {0}>``.  Over ``{0,1,2}`` with N=1: ``A = <P{0,1}, {0}>``
    and ``B = <P{0} u P{1}, {0}>``.
    """
    return dict(_named(m, nvars))


def hasse_edges(elements: Sequence[Element]) -> set[tuple[Element, Element]]:
    """Covering pairs ``(lower, upper)`` of ``<=`` restricted to ``elements``."""
    elems = list(dict.fromkeys(elements))
    below = {
        y: [x for x in elems if x != y and leq(x, y)] for y in elems
    }
    edges = set()
    for y in elems:
        for x in below[y]:
            if not any(z != x and leq(x, z) for z in below[y]):
                edges.add((x, y))
    return edges


def element_label(x: Element) -> str:
    """Preferred short name of ``x`` (alias if any, else canonical text)."""
    for name, y in _named(x.m, x.nvars):
        if y == x and not (name.startswith("D") and name[1:].isdigit()):
            return name
    return format_element(x)
