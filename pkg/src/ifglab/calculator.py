"""A small expression language over an IFG-cylindric power set algebra.

    expr    := product (("+" [J]) product)*
    product := unary (("*" [J]) unary)*
    unary   := "~" unary | "C(" n "," J ")" unary | atom
    atom    := "(" expr ")" | alias | "[[" formula "]]" | "<" family "|" family ">"

``J`` is written ``{}``, ``{0,1}`` or ``{v0}`` and defaults to ``{}``.
Aliases are ``0``, ``1``, ``Omega``, ``Dij`` and the lettered elements of
the builtin algebras; ``[[phi]]`` is the meaning of ``phi`` in the structure.
"""

from __future__ import annotations

import re

from . import algebra as alg
from .algebra import Element
from .model import Structure, make_structure
from .semantics import DEFAULT_MEANING_GUARD, meaning
from .syntax import parse

__all__ = ["CalcError", "evaluate_expression"]


class CalcError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<formula>\[\[.*?\]\])|(?P<literal><[^<>]*>)|(?P<indep>\{[^{}]*\})"
    r"|(?P<cyl>C\(\s*v?(?P<cvar>\d+)\s*,\s*(?P<cJ>\{[^{}]*\})\s*\))"
    r"|(?P<name>Omega|Ω|D\d\d|~?[A-Za-z]\w*|[01])|(?P<op>[+*~()]))"
)


def _indices(text: str) -> frozenset[int]:
    inner = text.strip()[1:-1]
    out = set()
    for part in filter(None, (p.strip() for p in inner.split(","))):
        mt = re.fullmatch(r"v?(\d+)", part)
        if not mt:
            raise CalcError(f"bad index {part!r} in {text}")
        out.add(int(mt[1]))
    return frozenset(out)


def _tokens(text: str) -> list[tuple[str, str, re.Match]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise CalcError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        kind = mt.lastgroup if mt.lastgroup not in ("cvar", "cJ") else "cyl"
        out.append((kind, mt[kind], mt))
        pos = mt.end()
    return out


class _Calc:
    def __init__(self, text: str, m: int, nvars: int, structure: Structure, guard: int):
        self.toks = _tokens(text)
        self.i = 0
        self.m, self.nvars = m, nvars
        self.structure = structure
        self.guard = guard
        self.names = alg.named_elements(m, nvars)
        self.names.setdefault("Ω", self.names["Omega"])

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise CalcError("unexpected end of expression")
        self.i += 1
        return tok

    def index_set(self) -> frozenset[int]:
        if self.peek()[0] == "indep":
            return _indices(self.take()[1])
        return frozenset()

    def expr(self) -> Element:
        x = self.product()
        while self.peek()[1] == "+":
            self.take()
            J = self.index_set()
            x = alg.plus(x, self.product(), J)
        return x

    def product(self) -> Element:
        x = self.unary()
        while self.peek()[1] == "*":
            self.take()
            J = self.index_set()
            x = alg.times(x, self.unary(), J)
        return x

    def unary(self) -> Element:
        kind, val, mt = self.peek()
        if val == "~":
            self.take()
            return alg.neg(self.unary())
        if kind == "cyl":
            self.take()
            return alg.cyl(int(mt["cvar"]), _indices(mt["cJ"]), self.unary())
        return self.atom()

    def atom(self) -> Element:
        kind, val, _ = self.take()
        if val == "(":
            x = self.expr()
            if self.take()[1] != ")":
                raise CalcError("expected ')'")
            return x
        if kind == "name":
            if val.startswith("~") and val not in self.names:
                return alg.neg(self._alias(val[1:]))
            return self._alias(val)
        if kind == "formula":
            phi = parse(val[2:-2], self.nvars)
            if phi.nvars != self.nvars:
                raise alg.DimensionError(f"formula needs N={phi.nvars}, algebra has N={self.nvars}")
            return meaning(self.structure, phi, self.guard)
        if kind == "literal":
            return alg.parse_element(val, self.m, self.nvars)
        raise CalcError(f"unexpected token {val!r}")

    def _alias(self, name: str) -> Element:
        try:
            return self.names[name]
        except KeyError:
            known = ", ".join(k for k in self.names if not k.startswith("[["))
            raise CalcError(f"unknown alias {name!r} for m={self.m}, N={self.nvars} (known: {known})") from None


def evaluate_expression(text: str, m: int | None = None, nvars: int = 1,
                        structure: Structure | str | None = None,
                        guard: int = DEFAULT_MEANING_GUARD) -> Element:
    """Evaluate ``text`` in the algebra over ``m`` elements with ``nvars`` variables.

    ``structure`` interprets ``[[formula]]`` atoms and defaults to the
    builtin structure naming every element; ``m`` defaults to its size.
    """
    if structure is None:
        if m is None:
            raise ValueError("need m or a structure")
        structure = make_structure(str(m))
    elif not isinstance(structure, Structure):
        structure = make_structure(structure)
    if m is None:
        m = structure.universe_size
    if m != structure.universe_size:
        raise alg.DimensionError(f"m={m} but the structure has {structure.universe_size} elements")
    calc = _Calc(text, m, nvars, structure, guard)
    x = calc.expr()
    if calc.i != len(calc.toks):
        raise CalcError(f"trailing input at token {calc.toks[calc.i][1]!r}")
    return x
