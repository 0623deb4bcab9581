"""IFG formulas, schemas and algebra terms: ASTs, parser and printer.

Concrete syntax::

    formula := "~" formula
             | ("E" | "A") var indep formula
             | "(" formula binop indep formula ")"
             | "(" formula ")"
             | term "=" term | term "!=" term | NAME "(" term {"," term} ")"
             | "@" INT                       (schemas only)
    binop   := "\\/" | "/\\" | "->" | "<->"
    indep   := ["/"] "{" [item {"," item}] "}"      item := var | INT
    term    := var | NAME
    var     := "v" INT

``t != s`` is read as ``~ (t = s)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .model import Structure, ValuationSpace, bits

__all__ = [
    "Var", "Const", "Eq", "Rel", "Neg", "Or", "And", "Implies", "Iff",
    "Exists", "Forall", "FormulaVar", "Formula", "Schema",
    "TermVar", "Diagonal", "TNeg", "Plus", "Times", "Cyl",
    "ParseError", "SymbolError",
    "parse", "parse_schema", "pretty", "desugar", "validate", "instantiate",
    "schema_to_term", "formula_for_team", "used_indices", "is_core", "format_indices",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class SymbolError(ValueError):
    """Unknown symbol or arity mismatch against a structure."""


# -- formula nodes -----------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    name: str


TermLike = Union[Var, Const]


@dataclass(frozen=True)
class Eq:
    left: TermLike
    right: TermLike


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple[TermLike, ...]


@dataclass(frozen=True)
class FormulaVar:
    index: int


@dataclass(frozen=True)
class Neg:
    sub: "Node"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Iff:
    left: "Node"
    right: "Node"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Exists:
    var: int
    J: frozenset[int]
    sub: "Node"


@dataclass(frozen=True)
class Forall:
    var: int
    J: frozenset[int]
    sub: "Node"


Node = Union[Eq, Rel, FormulaVar, Neg, Or, And, Implies, Iff, Exists, Forall]
ATOMS = (Eq, Rel)
BINARY = (Or, And, Implies, Iff)
QUANTIFIERS = (Exists, Forall)
CORE = (Eq, Rel, FormulaVar, Neg, Or, Exists)


def _children(node) -> tuple:
    if isinstance(node, Neg):
        return (node.sub,)
    if isinstance(node, BINARY):
        return (node.left, node.right)
    if isinstance(node, QUANTIFIERS):
        return (node.sub,)
    return ()


def used_indices(node) -> set[int]:
    """Every variable index mentioned: in atoms, quantifiers and independence sets."""
    out: set[int] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Eq):
            out.update(t.index for t in (n.left, n.right) if isinstance(t, Var))
        elif isinstance(n, Rel):
            out.update(t.index for t in n.args if isinstance(t, Var))
        elif isinstance(n, BINARY):
            out.update(n.J)
        elif isinstance(n, QUANTIFIERS):
            out.add(n.var)
            out.update(n.J)
        stack.extend(_children(n))
    return out


def _formula_vars(node) -> set[int]:
    out = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, FormulaVar):
            out.add(n.index)
        stack.extend(_children(n))
    return out


def is_core(node) -> bool:
    return isinstance(node, CORE) and all(is_core(c) for c in _children(node))


@dataclass(frozen=True)
class Formula:
    """An IFG_N-formula: a body together with its variable count ``N``."""

    body: Node
    nvars: int

    def __post_init__(self):
        if _formula_vars(self.body):
            raise ValueError("formula variables are only allowed in schemas")
        _check_bounds(self.body, self.nvars)

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Schema:
    """An IFG_N-schema with ``arity`` formula variables ``@0 .. @(arity-1)``."""

    body: Node
    nvars: int
    arity: int

    def __post_init__(self):
        _check_bounds(self.body, self.nvars)
        for i in _formula_vars(self.body):
            if not 0 <= i < self.arity:
                raise ValueError(f"formula variable @{i} out of range for arity {self.arity}")
        stack = [self.body]
        while stack:
            n = stack.pop()
            if isinstance(n, Rel) or (
                isinstance(n, Eq) and not (isinstance(n.left, Var) and isinstance(n.right, Var))
            ):
                raise ValueError("schemas only allow equalities between variables")
            stack.extend(_children(n))

    def __str__(self):
        return _pp(self.body)


def _check_bounds(node, nvars: int) -> None:
    bad = [i for i in used_indices(node) if not 0 <= i < nvars]
    if bad:
        raise ValueError(f"variable index v{max(bad)} out of range for N={nvars}")


# -- term nodes --------------------------------------------------------------

@dataclass(frozen=True)
class TermVar:
    index: int


@dataclass(frozen=True)
class Diagonal:
    i: int
    j: int


@dataclass(frozen=True)
class TNeg:
    sub: "Term"


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"
    J: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Cyl:
    var: int
    J: frozenset[int]
    sub: "Term"


Term = Union[TermVar, Diagonal, TNeg, Plus, Times, Cyl]


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|\\/|/\\|!=|[=~(){},/@α])|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
)
_VAR = re.compile(r"v(\d+)\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, schema: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.schema = schema

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def var(self) -> int:
        kind, val, pos = self.next()
        m = _VAR.match(val) if kind == "name" else None
        if not m:
            raise ParseError(f"expected a variable, found {val!r}", pos)
        return int(m.group(1))

    def indep(self) -> frozenset[int]:
        if self.peek()[1] == "/":
            self.next()
        self.expect("{")
        out = set()
        if self.peek()[1] != "}":
            while True:
                kind, val, pos = self.peek()
                if kind == "int":
                    self.next()
                    out.add(int(val))
                else:
                    out.add(self.var())
                if self.peek()[1] == ",":
                    self.next()
                    continue
                break
        self.expect("}")
        return frozenset(out)

    def term(self) -> TermLike:
        kind, val, pos = self.next()
        if kind != "name":
            raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)
        m = _VAR.match(val)
        return Var(int(m.group(1))) if m else Const(val)

    def formula(self) -> Node:
        kind, val, pos = self.peek()
        if val == "~":
            self.next()
            return Neg(self.formula())
        if kind == "name" and val in ("E", "A") and _VAR.match(self.peek(1)[1]):
            self.next()
            n = self.var()
            J = self.indep()
            sub = self.formula()
            return Exists(n, J, sub) if val == "E" else Forall(n, J, sub)
        if val in ("@", "α"):
            if not self.schema:
                raise ParseError("formula variables are only allowed in schemas", pos)
            self.next()
            kind, num, p = self.next()
            if kind != "int":
                raise ParseError("expected formula variable number", p)
            return FormulaVar(int(num))
        if val == "(":
            self.next()
            left = self.formula()
            kind, op, p = self.peek()
            if op == ")":
                self.next()
                return left
            cls = {"\\/": Or, "/\\": And, "->": Implies, "<->": Iff}.get(op)
            if cls is None or kind != "op":
                raise ParseError(f"expected a connective or ')', found {op or 'end of input'!r}", p)
            self.next()
            J = self.indep()
            right = self.formula()
            self.expect(")")
            return cls(left, right, J)
        if kind == "name" and not _VAR.match(val) and self.peek(1)[1] == "(":
            self.next()
            self.next()
            args = [self.term()]
            while self.peek()[1] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            return Rel(val, tuple(args))
        left = self.term()
        kind, op, p = self.next()
        if op not in ("=", "!="):
            raise ParseError(f"expected '=' or '!=', found {op or 'end of input'!r}", p)
        right = self.term()
        atom = Eq(left, right)
        return Neg(atom) if op == "!=" else atom

    def parse(self) -> Node:
        node = self.formula()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return node


def _resolve_nvars(node, nvars: int | None) -> int:
    used = used_indices(node)
    needed = max(used) + 1 if used else 1
    if nvars is None:
        return needed
    if nvars < needed:
        raise ParseError(f"variable index v{needed - 1} out of range for N={nvars}")
    return nvars


def parse(text: str, nvars: int | None = None) -> Formula:
    """Parse an IFG formula.  ``N`` defaults to one more than the largest index used."""
    node = _Parser(text, schema=False).parse()
    return Formula(node, _resolve_nvars(node, nvars))


def parse_schema(text: str, nvars: int | None = None, arity: int | None = None) -> Schema:
    node = _Parser(text, schema=True).parse()
    fv = _formula_vars(node)
    if arity is None:
        arity = max(fv) + 1 if fv else 0
    return Schema(node, _resolve_nvars(node, nvars), arity)


# -- printer -----------------------------------------------------------------

def format_indices(J: Iterable[int]) -> str:
    return "{" + ", ".join(f"v{j}" for j in sorted(J)) + "}"


def _term(t: TermLike) -> str:
    return f"v{t.index}" if isinstance(t, Var) else t.name


_OPS = {Or: "\\/", And: "/\\", Implies: "->", Iff: "<->"}


def _pp(node) -> str:
    if isinstance(node, Eq):
        return f"{_term(node.left)} = {_term(node.right)}"
    if isinstance(node, Rel):
        return f"{node.name}({', '.join(_term(a) for a in node.args)})"
    if isinstance(node, FormulaVar):
        return f"@{node.index}"
    if isinstance(node, Neg):
        inner = _pp(node.sub)
        return f"~ ({inner})" if isinstance(node.sub, ATOMS) else f"~ {inner}"
    if isinstance(node, BINARY):
        return f"({_pp(node.left)} {_OPS[type(node)]}{format_indices(node.J)} {_pp(node.right)})"
    if isinstance(node, QUANTIFIERS):
        q = "E" if isinstance(node, Exists) else "A"
        return f"{q} v{node.var}/{format_indices(node.J)} {_pp(node.sub)}"
    raise TypeError(f"not a formula node: {node!r}")


def pretty(phi) -> str:
    """Render a formula, schema or bare node in the concrete syntax."""
    if isinstance(phi, (Formula, Schema)):
        return _pp(phi.body)
    return _pp(phi)


# -- transformations ---------------------------------------------------------

def _desugar(node):
    if isinstance(node, (Eq, Rel, FormulaVar)):
        return node
    if isinstance(node, Neg):
        return Neg(_desugar(node.sub))
    if isinstance(node, Exists):
        return Exists(node.var, node.J, _desugar(node.sub))
    if isinstance(node, Forall):
        return Neg(Exists(node.var, node.J, Neg(_desugar(node.sub))))
    left, right, J = _desugar(node.left), _desugar(node.right), node.J
    if isinstance(node, Or):
        return Or(left, right, J)
    if isinstance(node, And):
        return Neg(Or(Neg(left), Neg(right), J))
    if isinstance(node, Implies):
        return Or(Neg(left), right, J)
    if isinstance(node, Iff):
        return Neg(Or(Neg(Or(Neg(left), right, J)), Neg(Or(Neg(right), left, J)), J))
    raise TypeError(f"not a formula node: {node!r}")


def desugar(phi):
    """Rewrite ``/\\``, ``A``, ``->`` and ``<->`` into ``~``, ``\\/`` and ``E``."""
    if isinstance(phi, Formula):
        return Formula(_desugar(phi.body), phi.nvars)
    if isinstance(phi, Schema):
        return Schema(_desugar(phi.body), phi.nvars, phi.arity)
    return _desugar(phi)


def validate(phi: Formula, structure: Structure) -> None:
    """Check every constant and relation symbol of ``phi`` against ``structure``."""
    stack = [phi.body if isinstance(phi, Formula) else phi]
    while stack:
        n = stack.pop()
        terms: Sequence = ()
        if isinstance(n, Eq):
            terms = (n.left, n.right)
        elif isinstance(n, Rel):
            terms = n.args
            if n.name not in structure.relations:
                raise SymbolError(f"unknown relation symbol {n.name!r}")
            arity = structure.relations[n.name][0]
            if arity != len(n.args):
                raise SymbolError(f"relation {n.name!r} has arity {arity}, used with {len(n.args)}")
        for t in terms:
            if isinstance(t, Const) and t.name not in structure.constants:
                raise SymbolError(f"unknown constant symbol {t.name!r}")
        stack.extend(_children(n))


def _subst(node, phis: Sequence):
    if isinstance(node, FormulaVar):
        return phis[node.index]
    if isinstance(node, (Eq, Rel)):
        return node
    if isinstance(node, Neg):
        return Neg(_subst(node.sub, phis))
    if isinstance(node, BINARY):
        return type(node)(_subst(node.left, phis), _subst(node.right, phis), node.J)
    return type(node)(node.var, node.J, _subst(node.sub, phis))


def instantiate(xi: Schema, phis: Sequence[Formula]) -> Formula:
    """Substitute ``phis[i]`` for ``@i`` in ``xi``."""
    if len(phis) != xi.arity:
        raise ValueError(f"schema takes {xi.arity} formulas, got {len(phis)}")
    for phi in phis:
        if phi.nvars != xi.nvars:
            raise ValueError(f"dimension mismatch: schema N={xi.nvars}, formula N={phi.nvars}")
    return Formula(_subst(xi.body, [p.body for p in phis]), xi.nvars)


def schema_to_term(xi) -> Term:
    """Node-for-node translation of a (core) schema into an algebra term."""
    node = xi.body if isinstance(xi, Schema) else xi
    if isinstance(node, FormulaVar):
        return TermVar(node.index)
    if isinstance(node, Eq):
        return Diagonal(node.left.index, node.right.index)
    if isinstance(node, Neg):
        return TNeg(schema_to_term(node.sub))
    if isinstance(node, Or):
        return Plus(schema_to_term(node.left), schema_to_term(node.right), node.J)
    if isinstance(node, Exists):
        return Cyl(node.var, node.J, schema_to_term(node.sub))
    raise ValueError(f"schema_to_term needs a core schema, got {type(node).__name__}")


def _fold(nodes: Sequence, cls, J: frozenset[int]):
    acc = nodes[0]
    for n in nodes[1:]:
        acc = cls(acc, n, J)
    return acc


def formula_for_team(team: int, structure: Structure, nvars: int) -> Formula:
    """The first-order formula whose meaning is ``<P(team), P(complement)>``.

    Each valuation becomes a conjunction ``v0 = c /\\{} ... /\\{} v(N-1) = c'``
    and the team is their left-nested ``\\/{}`` disjunction; the empty team
    gives ``~ (v0 = v0)``.
    """
    sp = ValuationSpace(structure.universe_size, nvars)
    names = [structure.name_of(a) for a in range(sp.m)]
    if team and None in names:
        raise SymbolError(f"element {names.index(None)} is not named by a constant")
    if not team:
        return Formula(Neg(Eq(Var(0), Var(0))), nvars)
    disjuncts = []
    for i in bits(team):
        entries = sp.decode(i)
        conj = [Eq(Var(k), Const(names[a])) for k, a in enumerate(entries)]
        disjuncts.append(_fold(conj, And, frozenset()))
    return Formula(_fold(disjuncts, Or, frozenset()), nvars)
