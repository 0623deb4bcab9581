"""Suits and double suits over ``^N A``.

Suits are enumerated through their antichains of maximal teams.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .algebra import Element
from .model import popcount, space

__all__ = [
    "enumerate_suits", "count_suits", "count_double_suits", "count_table",
    "dsuit_carrier", "REFERENCE_TABLE", "SizeGuardError",
]

# Reference rows for m = 0..8; rows m >= 6 are display-only.
REFERENCE_TABLE = {
    0: (1, 1),
    1: (2, 3),
    2: (5, 11),
    3: (19, 55),
    4: (167, 489),
    5: (7580, 17279),
    6: (7828353, 15758603),
    7: (2414682040997, 4829474397415),
    8: (56130437228687557907787, 112260874496010913723317),
}


class SizeGuardError(RuntimeError):
    pass


def _antichains(n_points: int) -> Iterator[tuple[int, ...]]:
    """Nonempty antichains of subsets of an ``n_points`` set (teams as ints)."""
    teams = range(1 << n_points)

    def extend(start: int, chosen: tuple[int, ...]):
        for t in range(start, len(teams)):
            if all(t & c != t and t & c != c for c in chosen):
                nxt = chosen + (t,)
                yield nxt
                yield from extend(t + 1, nxt)

    yield from extend(0, ())


def enumerate_suits(m: int, nvars: int = 1, max_points: int = 5) -> Iterator[int]:
    """Every nonempty downward-closed family of teams over ``^N A``, once each."""
    sp = space(m, nvars)
    if sp.size > max_points:
        raise SizeGuardError(f"m^N = {sp.size} exceeds the enumeration guard of {max_points}")
    for chain in _antichains(sp.size):
        yield sp.downward_closure(chain)


@lru_cache(maxsize=None)
def _suit_count(n_points: int) -> int:
    return sum(1 for _ in _antichains(n_points))


def count_suits(m: int, nvars: int = 1, max_points: int = 5) -> int:
    sp = space(m, nvars)
    if sp.size > max_points:
        raise SizeGuardError(f"m^N = {sp.size} exceeds the enumeration guard of {max_points}")
    return _suit_count(sp.size)


def count_double_suits(m: int, nvars: int = 1, max_points: int = 5) -> int:
    """Number of double suits.

    For a suit ``X+`` with support ``U`` (the union of its teams), a suit
    ``X-`` meets ``X+`` only in the empty team exactly when ``X-`` lives on
    the complement of ``U``, so the partner count is the suit count of a
    ``(m^N - |U|)``-point set.
    """
    sp = space(m, nvars)
    if sp.size > max_points:
        raise SizeGuardError(f"m^N = {sp.size} exceeds the enumeration guard of {max_points}")
    total = 0
    for chain in _antichains(sp.size):
        support = 0
        for t in chain:
            support |= t
        total += _suit_count(sp.size - popcount(support))
    return total


def count_table(max_m: int = 5) -> list[tuple[int, int, int, int]]:
    """Rows ``(m, 2^m, f(m), g(m))`` for N = 1."""
    if max_m > 5:
        raise SizeGuardError("exhaustive counting is limited to m <= 5")
    return [(m, 2**m, count_suits(m), count_double_suits(m)) for m in range(max_m + 1)]


def dsuit_carrier(m: int, nvars: int = 1) -> list[Element]:
    """All double suits over ``(m, N)`` sorted by their ``(plus, minus)`` bits."""
    sp = space(m, nvars)
    if sp.size > 4:
        raise SizeGuardError(f"m^N = {sp.size} too large to materialise all double suits (limit 4)")
    suits = sorted(enumerate_suits(m, nvars))
    out = [Element(m, nvars, p, q) for p in suits for q in suits if p & q == 1]
    out.sort(key=Element.sort_key)
    return out
