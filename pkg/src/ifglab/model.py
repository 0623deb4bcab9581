"""Finite structures, valuations, teams and the team transformers.

A team over ``^N A`` (``A = {0..m-1}``) is stored as a plain ``int`` bit
vector: bit ``i`` is set when the valuation with index ``i`` belongs to the
team.  Valuation indices are base-``m`` with ``v0`` as the least significant
digit.  The helpers that need ``(m, N)`` live on :class:`ValuationSpace`.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cache, cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Structure",
    "StructureError",
    "ValuationSpace",
    "ChoiceFunction",
    "make_structure",
    "agree_outside",
    "space",
    "bits",
    "popcount",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = re.compile(r"(v\d+|E|A)\Z")


class StructureError(ValueError):
    """Raised for malformed structure descriptions."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Structure:
    """A finite relational structure with universe ``{0..universe_size-1}``.

    ``relations`` maps a name to ``(arity, tuples)``.
    """

    universe_size: int
    constants: Mapping[str, int] = field(default_factory=dict)
    relations: Mapping[str, tuple[int, frozenset[tuple[int, ...]]]] = field(
        default_factory=dict
    )
    name: str = ""

    def __post_init__(self):
        m = self.universe_size
        if not isinstance(m, int) or m < 1:
            raise StructureError(f"universe size must be a positive integer, got {m!r}")
        for cname, idx in self.constants.items():
            _check_name(cname)
            if not isinstance(idx, int) or not 0 <= idx < m:
                raise StructureError(f"constant {cname!r} -> {idx!r} is outside the universe of size {m}")
        for rname, (arity, tuples) in self.relations.items():
            _check_name(rname)
            if rname in self.constants:
                raise StructureError(f"duplicate name {rname!r}")
            for t in tuples:
                if len(t) != arity:
                    raise StructureError(f"relation {rname!r} has arity {arity} but contains {t!r}")
                if any(not 0 <= x < m for x in t):
                    raise StructureError(f"relation {rname!r} tuple {t!r} is outside the universe")

    def __hash__(self):
        return hash((self.universe_size, tuple(sorted(self.constants.items())), tuple(sorted(self.relations))))

    def name_of(self, element: int) -> str | None:
        """Smallest constant name denoting ``element``, or ``None``."""
        names = sorted(n for n, v in self.constants.items() if v == element)
        return names[0] if names else None

    @property
    def fully_named(self) -> bool:
        return all(self.name_of(a) is not None for a in range(self.universe_size))


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not _NAME.match(name) or _RESERVED.match(name):
        raise StructureError(f"invalid symbol name {name!r}")


def _builtin(m: int) -> Structure:
    return Structure(m, {f"c{i}": i for i in range(m)}, {}, name=str(m))


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise StructureError(f"duplicate name {k!r}")
        out[k] = v
    return out


def make_structure(spec) -> Structure:
    """Build a :class:`Structure` from a builtin name, a JSON text/path, or a dict.

    A string of decimal digits (``"2"``, ``"3"``) gives the structure on
    ``{0..m-1}`` with every element named by a constant ``c<i>``.
    """
    if isinstance(spec, Structure):
        return spec
    if isinstance(spec, int):
        spec = str(spec)
    if isinstance(spec, str):
        if spec.isdigit():
            m = int(spec)
            if m < 1:
                raise StructureError("universe size must be at least 1")
            return _builtin(m)
        text = spec
        if not spec.lstrip().startswith("{"):
            path = Path(spec)
            if not path.exists():
                raise StructureError(f"no builtin structure or file named {spec!r}")
            text = path.read_text(encoding="utf-8")
        try:
            spec = json.loads(text, object_pairs_hook=_reject_duplicates)
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid structure JSON: {exc}") from None
    if not isinstance(spec, Mapping):
        raise StructureError("structure description must be a JSON object")
    unknown = set(spec) - {"universe", "constants", "relations", "name"}
    if unknown:
        raise StructureError(f"unknown structure keys: {sorted(unknown)}")
    if "universe" not in spec:
        raise StructureError("structure description needs a 'universe' size")
    relations = {}
    for rname, rel in spec.get("relations", {}).items():
        try:
            arity = int(rel["arity"])
            tuples = frozenset(tuple(int(x) for x in t) for t in rel.get("tuples", []))
        except (KeyError, TypeError, ValueError):
            raise StructureError(f"malformed relation {rname!r}") from None
        relations[rname] = (arity, tuples)
    return Structure(
        spec["universe"],
        dict(spec.get("constants", {})),
        relations,
        name=str(spec.get("name", "")),
    )


def agree_outside(a: tuple[int, ...], b: tuple[int, ...], J: Iterable[int]) -> bool:
    """True iff ``a`` and ``b`` coincide at every index not in ``J``."""
    if len(a) != len(b):
        raise ValueError(f"valuations of different length: {len(a)} vs {len(b)}")
    J = set(J)
    return all(x == y for i, (x, y) in enumerate(zip(a, b)) if i not in J)


def _jmask(J: Iterable[int]) -> int:
    out = 0
    for j in J:
        out |= 1 << j
    return out


@dataclass(frozen=True)
class ChoiceFunction:
    """A function ``V -> A`` that is constant on each ``~J`` block of ``V``.

    ``values`` maps each block representative (the least valuation index of
    the block) to the chosen element; ``rep_of`` maps every member of the
    domain to its representative.
    """

    domain: int
    J: frozenset[int]
    values: Mapping[int, int]
    rep_of: Mapping[int, int]

    def __call__(self, index: int) -> int:
        try:
            return self.values[self.rep_of[index]]
        except KeyError:
            raise ValueError(f"valuation {index} is outside the domain of the choice function") from None


class ValuationSpace:
    """The set ``^N A`` for ``|A| = m`` together with team-level operations."""

    def __init__(self, m: int, nvars: int):
        if m < 0 or nvars < 0:
            raise ValueError("m and N must be non-negative")
        self.m = m
        self.nvars = nvars
        self.size = m**nvars
        self.full = (1 << self.size) - 1
        self.n_teams = 1 << self.size
        self._pow = [m**i for i in range(nvars)]

    def __repr__(self):
        return f"ValuationSpace(m={self.m}, N={self.nvars})"

    # -- valuations --------------------------------------------------------
    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ValueError(f"valuation index {index} out of range for {self}")
        out = []
        for _ in range(self.nvars):
            index, r = divmod(index, self.m)
            out.append(r)
        return tuple(out)

    def encode(self, entries: Iterable[int]) -> int:
        entries = tuple(entries)
        if len(entries) != self.nvars or any(not 0 <= a < self.m for a in entries):
            raise ValueError(f"{entries!r} is not a valuation in {self}")
        return sum(a * p for a, p in zip(entries, self._pow))

    def digit(self, index: int, n: int) -> int:
        return index // self._pow[n] % self.m

    def set_digit(self, index: int, n: int, value: int) -> int:
        return index + (value - self.digit(index, n)) * self._pow[n]

    def team(self, valuations: Iterable) -> int:
        """Team from valuation tuples or valuation indices."""
        out = 0
        for v in valuations:
            i = v if isinstance(v, int) else self.encode(v)
            if not 0 <= i < self.size:
                raise ValueError(f"valuation index {i} out of range for {self}")
            out |= 1 << i
        return out

    def members(self, team: int) -> list[int]:
        return list(bits(team))

    def _check_var(self, n: int) -> None:
        if not 0 <= n < self.nvars:
            raise ValueError(f"variable index {n} out of range for N={self.nvars}")

    def _check_J(self, J) -> frozenset[int]:
        J = frozenset(J)
        for j in J:
            if not 0 <= j < self.nvars:
                raise ValueError(f"independence index {j} out of range for N={self.nvars}")
        return J

    # -- agreement ---------------------------------------------------------
    @lru_cache(maxsize=None)
    def _block_keys(self, jmask: int) -> tuple[int, ...]:
        # Key of a valuation: its index with the digits in J zeroed.
        js = [j for j in range(self.nvars) if jmask >> j & 1]
        return tuple(
            i - sum(self.digit(i, j) * self._pow[j] for j in js) for i in range(self.size)
        )

    @lru_cache(maxsize=None)
    def _blocks(self, team: int, jmask: int) -> tuple[int, ...]:
        keys = self._block_keys(jmask)
        groups: dict[int, int] = {}
        for i in bits(team):
            groups[keys[i]] = groups.get(keys[i], 0) | 1 << i
        # dict preserves first-seen order, i.e. increasing representative
        return tuple(groups.values())

    def agreement_blocks(self, team: int, J: Iterable[int]) -> list[int]:
        """Partition ``team`` into its ``~J`` classes, ordered by least member."""
        J = self._check_J(J)
        return list(self._blocks(team, _jmask(J)))

    def saturated_disjoint_covers(self, team: int, J: Iterable[int]) -> Iterator[tuple[int, int]]:
        """All pairs ``(V1, V2)`` with ``team = V1 cup_J V2``.

        Blocks are assigned in order of their representative, ``V1`` first.
        """
        J = self._check_J(J)
        yield from self._covers(team, _jmask(J))

    @lru_cache(maxsize=None)
    def _covers(self, team: int, jmask: int) -> tuple[tuple[int, int], ...]:
        blocks = self._blocks(team, jmask)
        out = []
        for choice in itertools.product((True, False), repeat=len(blocks)):
            v1 = 0
            for take, b in zip(choice, blocks):
                if take:
                    v1 |= b
            out.append((v1, team ^ v1))
        return tuple(out)

    def independent_choices(self, team: int, J: Iterable[int]) -> Iterator[ChoiceFunction]:
        """Every ``f: team -> A`` constant on the ``~J`` blocks of ``team``."""
        J = self._check_J(J)
        blocks = self._blocks(team, _jmask(J))
        reps = [(b & -b).bit_length() - 1 for b in blocks]
        rep_of = {i: r for b, r in zip(blocks, reps) for i in bits(b)}
        for values in itertools.product(range(self.m), repeat=len(blocks)):
            yield ChoiceFunction(team, J, dict(zip(reps, values)), rep_of)

    # -- team transformers -------------------------------------------------
    def substitute(self, team: int, n: int, f: ChoiceFunction) -> int:
        """``V(n:f)``: overwrite the n-th entry of each member by ``f``."""
        self._check_var(n)
        if team & ~f.domain:
            raise ValueError("choice function does not cover the team")
        out = 0
        for i in bits(team):
            out |= 1 << self.set_digit(i, n, f(i))
        return out

    @lru_cache(maxsize=None)
    def _line(self, index: int, n: int) -> int:
        out = 0
        for b in range(self.m):
            out |= 1 << self.set_digit(index, n, b)
        return out

    def expand(self, team: int, n: int) -> int:
        """``W(n:A)``: every member with its n-th entry replaced by every element."""
        self._check_var(n)
        return self._expand(team, n)

    @lru_cache(maxsize=None)
    def _expand(self, team: int, n: int) -> int:
        out = 0
        for i in bits(team):
            out |= self._line(i, n)
        return out

    def choice_images(self, team: int, n: int, J: Iterable[int]) -> frozenset[int]:
        """The set of teams ``V(n:f)`` over all ``f: V ->_J A`` (deduplicated)."""
        self._check_var(n)
        J = self._check_J(J)
        return self._images(team, n, _jmask(J))

    @lru_cache(maxsize=None)
    def _images(self, team: int, n: int, jmask: int) -> frozenset[int]:
        results = {0}
        for block in self._blocks(team, jmask):
            options = set()
            for b in range(self.m):
                img = 0
                for i in bits(block):
                    img |= 1 << self.set_digit(i, n, b)
                options.add(img)
            results = {r | o for r in results for o in options}
        return frozenset(results)

    # -- families of teams -------------------------------------------------
    @cached_property
    def all_teams(self) -> range:
        return range(self.n_teams)

    @lru_cache(maxsize=None)
    def powerset_family(self, team: int) -> int:
        """The family ``P(team)`` as a bit vector over team indices."""
        out = 0
        sub = team
        while True:
            out |= 1 << sub
            if sub == 0:
                return out
            sub = (sub - 1) & team

    def is_downward_closed(self, family: int) -> bool:
        for t in bits(family):
            for i in bits(t):
                if not family >> (t ^ (1 << i)) & 1:
                    return False
        return True

    def maximal_teams(self, family: int) -> list[int]:
        """Members of ``family`` not strictly contained in another member."""
        members = list(bits(family))
        return [t for t in members if not any(u != t and t & u == t for u in members)]

    def downward_closure(self, teams: Iterable[int]) -> int:
        out = 0
        for t in teams:
            out |= self.powerset_family(t)
        return out

    # -- text --------------------------------------------------------------
    def format_valuation(self, index: int) -> str:
        entries = self.decode(index)
        if self.m <= 10:
            return "".join(map(str, entries))
        return ".".join(map(str, entries))

    def format_team(self, team: int) -> str:
        return "{" + ", ".join(self.format_valuation(i) for i in bits(team)) + "}"

    def parse_valuation(self, text: str) -> int:
        text = text.strip()
        parts = text.split(".") if "." in text else list(text)
        try:
            return self.encode(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"bad valuation {text!r} for {self}") from None

    def parse_team(self, text: str) -> int:
        """Parse ``{01, 10}`` style team syntax (``v0`` written first)."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"team must be written as {{...}}, got {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return 0
        return self.team(self.parse_valuation(p) for p in inner.split(","))


@cache
def space(m: int, nvars: int) -> ValuationSpace:
    """Shared :class:`ValuationSpace` for ``(m, N)``."""
    return ValuationSpace(m, nvars)
