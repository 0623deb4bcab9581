"""Subalgebras, congruences and simplicity for finite IFG-algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import algebra as alg
from .algebra import Element

__all__ = [
    "FiniteAlgebra", "Congruence", "SimplicityResult", "HereditaryResult",
    "NotClosedError", "signature", "basic_constants", "generate_subuniverse",
    "enumerate_subuniverses", "principal_congruence", "is_congruence",
    "is_simple", "is_hereditarily_simple", "term_operations",
]


class NotClosedError(ValueError):
    pass


def _subsets(n: int) -> list[frozenset[int]]:
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]


def signature(m: int, nvars: int):
    """``(unary, binary)`` operation lists as ``(name, function)`` pairs."""
    Js = _subsets(nvars)
    unary = [("~", alg.neg)]
    for n in range(nvars):
        for J in Js:
            unary.append((f"C{n}{_jname(J)}", lambda x, n=n, J=J: alg.cyl(n, J, x)))
    binary = []
    for J in Js:
        binary.append((f"+{_jname(J)}", lambda x, y, J=J: alg.plus(x, y, J)))
        binary.append((f"*{_jname(J)}", lambda x, y, J=J: alg.times(x, y, J)))
    return unary, binary


def _jname(J) -> str:
    return "{" + ",".join(map(str, sorted(J))) + "}"


def basic_constants(m: int, nvars: int) -> list[Element]:
    out = [alg.zero(m, nvars), alg.one(m, nvars)]
    out += [alg.diagonal(i, j, m, nvars) for i in range(nvars) for j in range(nvars)]
    return list(dict.fromkeys(out))


class FiniteAlgebra:
    """A carrier of elements closed under every operation of the signature."""

    def __init__(self, carrier: Iterable[Element], check: bool = True, _tables=None):
        self.carrier = tuple(sorted(set(carrier), key=Element.sort_key))
        if not self.carrier:
            raise ValueError("empty carrier")
        alg._same_dims(*self.carrier)
        self.m, self.nvars = self.carrier[0].dims
        self.index = {x: i for i, x in enumerate(self.carrier)}
        if _tables is not None:
            self.__dict__["tables"] = _tables
        if check:
            for c in basic_constants(self.m, self.nvars):
                if c not in self.index:
                    raise NotClosedError(f"constant {alg.element_label(c)} missing from carrier")
            self.tables  # noqa: B018 - builds tables, raising if not closed

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"FiniteAlgebra(m={self.m}, N={self.nvars}, size={len(self)})"

    def idx(self, x: Element | int) -> int:
        return x if isinstance(x, (int, np.integer)) else self.index[x]

    @cached_property
    def tables(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Operation tables over carrier indices: (unary, binary)."""
        unary, binary = signature(self.m, self.nvars)
        n = len(self.carrier)

        def look(x):
            try:
                return self.index[x]
            except KeyError:
                raise NotClosedError(f"carrier not closed: {alg.element_label(x)} missing") from None

        u = [np.array([look(f(x)) for x in self.carrier]) for _, f in unary]
        b = [
            np.array([[look(f(x, y)) for y in self.carrier] for x in self.carrier]).reshape(n, n)
            for _, f in binary
        ]
        return u, b

    def subalgebra(self, indices: Iterable[int]) -> "FiniteAlgebra":
        """Induced subalgebra on a closed set of carrier indices."""
        keep = sorted(set(int(i) for i in indices))
        remap = np.full(len(self.carrier), -1)
        remap[keep] = np.arange(len(keep))
        u, b = self.tables
        ku = [remap[t[keep]] for t in u]
        kb = [remap[t[np.ix_(keep, keep)]] for t in b]
        if any((t < 0).any() for t in ku + kb):
            raise NotClosedError("index set is not closed under the operations")
        sub = FiniteAlgebra((self.carrier[i] for i in keep), check=False, _tables=(ku, kb))
        return sub

    def labels(self) -> list[str]:
        return [alg.element_label(x) for x in self.carrier]


@dataclass(frozen=True)
class Congruence:
    """An equivalence on carrier indices, stored as sorted blocks."""

    blocks: tuple[tuple[int, ...], ...]
    size: int

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Congruence":
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(sorted(tuple(g) for g in groups.values())), len(labels))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], size: int) -> "Congruence":
        seen: set[int] = set()
        out = []
        for b in blocks:
            b = tuple(sorted(b))
            if seen.intersection(b):
                raise ValueError("blocks overlap")
            seen.update(b)
            out.append(b)
        if seen != set(range(size)):
            raise ValueError("blocks do not cover the carrier")
        return cls(tuple(sorted(out)), size)

    @property
    def is_total(self) -> bool:
        return len(self.blocks) == 1

    @property
    def is_identity(self) -> bool:
        return len(self.blocks) == self.size

    def class_of(self, i: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if i in b)

    def related(self, i: int, j: int) -> bool:
        return j in self.class_of(i)

    def format(self, algebra: FiniteAlgebra) -> str:
        names = algebra.labels()
        return " ".join("{" + ",".join(names[i] for i in b) + "}" for b in self.blocks)


def _close(gens: list[Element], m: int, nvars: int, cap: int) -> list[Element]:
    unary, binary = signature(m, nvars)
    elems = list(dict.fromkeys(basic_constants(m, nvars) + list(gens)))
    seen = set(elems)
    i = 0
    # worklist: each new element is combined with everything found so far
    while i < len(elems):
        x = elems[i]
        fresh = [f(x) for _, f in unary]
        for y in elems[: i + 1]:
            for _, f in binary:
                fresh.append(f(x, y))
                fresh.append(f(y, x))
        for z in fresh:
            if z not in seen:
                seen.add(z)
                elems.append(z)
                if len(elems) > cap:
                    raise NotClosedError(f"closure exceeds the element cap of {cap}")
        i += 1
    return elems


def generate_subuniverse(gens: Iterable[Element], m: int | None = None, nvars: int | None = None,
                         cap: int = 100_000) -> FiniteAlgebra:
    """The subalgebra generated by ``gens`` together with 0, 1 and the diagonals."""
    gens = list(gens)
    if gens:
        alg._same_dims(*gens)
        m, nvars = gens[0].dims
    if m is None or nvars is None:
        raise ValueError("dimensions are needed when there are no generators")
    return FiniteAlgebra(_close(gens, m, nvars, cap), check=False)


def _closed(u, b, members: np.ndarray, mask: np.ndarray) -> bool:
    for t in u:
        if not mask[t[members]].all():
            return False
    sub = np.ix_(members, members)
    for t in b:
        if not mask[t[sub]].all():
            return False
    return True


def _closure_indices(algebra: FiniteAlgebra, start: Iterable[int]) -> frozenset[int]:
    u, b = algebra.tables
    have = set(int(i) for i in start)
    frontier = list(have)
    while frontier:
        new = set()
        for t in u:
            new.update(int(v) for v in t[frontier])
        cur = np.array(sorted(have | set(frontier)))
        fr = np.array(frontier)
        for t in b:
            new.update(t[np.ix_(fr, cur)].ravel().tolist())
            new.update(t[np.ix_(cur, fr)].ravel().tolist())
        frontier = [x for x in new if x not in have]
        have.update(frontier)
    return frozenset(have)


def enumerate_subuniverses(algebra: FiniteAlgebra, max_exhaustive: int = 16,
                           limit: int = 10_000) -> list[frozenset[int]]:
    """Every subuniverse, as a set of carrier indices, in a canonical order.

    Small carriers are searched by checking every subset that contains the
    constants; larger ones by closing ``S u {x}`` from each subuniverse ``S``.
    """
    return list(_iter_subuniverses(algebra, max_exhaustive, limit))


def _iter_subuniverses(algebra: FiniteAlgebra, max_exhaustive: int, limit: int) -> Iterator[frozenset[int]]:
    n = len(algebra)
    base = _closure_indices(algebra, [algebra.idx(c) for c in basic_constants(algebra.m, algebra.nvars)])
    if n <= max_exhaustive:
        u, b = algebra.tables
        rest = [i for i in range(n) if i not in base]
        found = []
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                members = np.array(sorted(base.union(extra)))
                mask = np.zeros(n, dtype=bool)
                mask[members] = True
                if _closed(u, b, members, mask):
                    found.append(frozenset(members.tolist()))
        yield from sorted(found, key=lambda s: (len(s), sorted(s)))
        return
    seen = {base}
    queue = [base]
    yield base
    while queue:
        nxt = []
        for s in queue:
            for x in range(n):
                if x in s:
                    continue
                t = _closure_indices(algebra, s | {x})
                if t not in seen:
                    seen.add(t)
                    if len(seen) > limit:
                        raise NotClosedError(f"more than {limit} subuniverses")
                    yield t
                    nxt.append(t)
        queue = sorted(nxt, key=lambda s: (len(s), sorted(s)))


def principal_congruence(algebra: FiniteAlgebra, x, y) -> Congruence:
    """``Cg(x, y)``: the least congruence identifying ``x`` and ``y``."""
    a0, b0 = algebra.idx(x), algebra.idx(y)
    n = len(algebra)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    u, bt = algebra.tables
    classes = n
    pending = [(a0, b0)]
    while pending and classes > 1:
        a, b = pending.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        classes -= 1
        # images under every basic translation
        for t in u:
            if t[a] != t[b]:
                pending.append((int(t[a]), int(t[b])))
        for t in bt:
            for row_a, row_b in ((t[a], t[b]), (t[:, a], t[:, b])):
                diff = np.nonzero(row_a != row_b)[0]
                if len(diff):
                    pending.extend(zip(row_a[diff].tolist(), row_b[diff].tolist()))
    if classes == 1:
        return Congruence((tuple(range(n)),), n)
    return Congruence.from_labels([find(i) for i in range(n)])


def is_congruence(algebra: FiniteAlgebra, partition) -> bool:
    """True iff ``partition`` (a :class:`Congruence` or iterable of blocks) respects every operation.

    Compatibility with each binary operation is checked one argument at a
    time, which for an equivalence relation is the same as checking all
    pairs of related argument tuples.
    """
    cong = partition if isinstance(partition, Congruence) else Congruence.from_blocks(
        [[algebra.idx(e) for e in blk] for blk in partition], len(algebra)
    )
    if cong.size != len(algebra):
        raise ValueError("partition size does not match the carrier")
    labels = np.empty(len(algebra), dtype=int)
    for k, blk in enumerate(cong.blocks):
        labels[list(blk)] = k
    u, b = algebra.tables
    for blk in cong.blocks:
        if len(blk) < 2:
            continue
        idx = list(blk)
        for t in u:
            if len(set(labels[t[idx]].tolist())) > 1:
                return False
        for t in b:
            lt = labels[t]
            rows = lt[idx]
            if (rows != rows[0]).any():
                return False
            cols = lt[:, idx]
            if (cols != cols[:, :1]).any():
                return False
    return True


@dataclass
class SimplicityResult:
    simple: bool
    witness: tuple[int, int] | None = None
    congruence: Congruence | None = None

    def __bool__(self):
        return self.simple


def is_simple(algebra: FiniteAlgebra, max_size: int = 1000) -> SimplicityResult:
    """Simple iff ``Cg(x, y)`` is total for every pair of distinct elements."""
    n = len(algebra)
    if n > max_size:
        raise NotClosedError(f"algebra of size {n} exceeds the simplicity guard {max_size}")
    if n == 1:
        return SimplicityResult(False)
    for i in range(n):
        for j in range(i + 1, n):
            cg = principal_congruence(algebra, i, j)
            if not cg.is_total:
                return SimplicityResult(False, (i, j), cg)
    return SimplicityResult(True)


@dataclass
class HereditaryResult:
    hereditarily_simple: bool
    checked: int
    witness: FiniteAlgebra | None = None
    congruence: Congruence | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self):
        return self.hereditarily_simple


def is_hereditarily_simple(algebra: FiniteAlgebra, max_exhaustive: int = 16,
                           limit: int = 10_000) -> HereditaryResult:
    """Check every subalgebra for simplicity, stopping at the first that is not."""
    checked = 0
    for s in _iter_subuniverses(algebra, max_exhaustive, limit):
        sub = algebra.subalgebra(s)
        res = is_simple(sub)
        checked += 1
        if not res:
            return HereditaryResult(False, checked, sub, res.congruence, res.witness)
    return HereditaryResult(True, checked)


def term_operations(algebra: FiniteAlgebra, depth: int, arity: int = 2) -> list[np.ndarray]:
    """Distinct term operations of depth at most ``depth``, level by level.

    An ``arity``-ary operation is the vector of its values on every input
    tuple (row-major over carrier indices).  Level 0 holds the projections
    and the constants; level ``d`` applies one basic operation to
    operations of level below ``d``.  Returns one ``(count, n**arity)``
    array per level, each row new at that level.
    """
    n = len(algebra)
    grid = np.indices((n,) * arity).reshape(arity, -1)
    consts = [algebra.idx(c) for c in basic_constants(algebra.m, algebra.nvars)]
    start = [grid[k] for k in range(arity)] + [np.full(n**arity, c) for c in consts]
    level = np.unique(np.array(start), axis=0)
    levels = [level]
    known = {row.tobytes() for row in level}
    allf = level
    u, b = algebra.tables
    for _ in range(depth):
        cand = [t[level] for t in u]
        for t in b:
            cand.append(t[level[:, None, :], allf[None, :, :]].reshape(-1, n**arity))
            cand.append(t[allf[:, None, :], level[None, :, :]].reshape(-1, n**arity))
        cand = np.unique(np.concatenate(cand), axis=0)
        fresh = np.array([row for row in cand if row.tobytes() not in known])
        if len(fresh) == 0:
            break
        known.update(row.tobytes() for row in fresh)
        levels.append(fresh)
        level = fresh
        allf = np.concatenate([allf, fresh])
    return levels
