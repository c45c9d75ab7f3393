"""Regularity certificates: partitions of the columns into d groups such that
every tile fixes exactly one coordinate per group, plus the all-star block.

A tiling admitting such a partition behaves, group by group, like a cube
tiling code; the bridge module exploits that correspondence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .core import DomboxError, TritWord
from .tiling import DominoTiling


@dataclass(frozen=True)
class RegularityCertificate:
    """Column groups, the all-star block, and the witness row sets per group.

    ``groups[i]`` lists the columns of group i+1 (0-based columns, ascending);
    ``witness_rows[i]`` is the set of distinct restrictions of the tiling's
    words to that group, which for a valid certificate is exactly the one-hot
    set: one 0 or 1 at each group position, stars elsewhere.
    """

    groups: tuple[tuple[int, ...], ...]
    stars: tuple[int, ...]
    witness_rows: tuple[tuple[TritWord, ...], ...]
    star_row: Optional[TritWord]

    @classmethod
    def from_partition(
        cls, t: DominoTiling, groups: tuple[tuple[int, ...], ...], stars: tuple[int, ...]
    ) -> "RegularityCertificate":
        witness = tuple(
            tuple(sorted({w.restrict(g) for w in t.words})) for g in groups
        )
        star_row = None
        if stars:
            star_row = TritWord.parse("*" * len(stars))
        return cls(tuple(tuple(sorted(g)) for g in groups), tuple(sorted(stars)), witness, star_row)

    def to_json(self) -> str:
        doc = {
            "groups": [[j + 1 for j in g] for g in self.groups],
            "stars": [j + 1 for j in self.stars],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str, t: DominoTiling) -> "RegularityCertificate":
        doc = json.loads(text)
        groups = tuple(tuple(j - 1 for j in g) for g in doc["groups"])
        stars = tuple(j - 1 for j in doc.get("stars", []))
        return cls.from_partition(t, groups, stars)


@dataclass(frozen=True)
class SimpleComponent:
    """Maximal subset of a tiling whose words share one fixed-coordinate set."""

    support: tuple[int, ...]
    words: tuple[TritWord, ...]


def _one_hot_rows(size: int) -> set[TritWord]:
    rows = set()
    for j in range(size):
        for ch in "01":
            rows.add(TritWord.parse("*" * j + ch + "*" * (size - j - 1)))
    return rows


def _column_data(t: DominoTiling):
    """Per-column usage mask plus 0/1 presence across the words."""
    used = 0
    zeros = 0
    ones = 0
    for w in t.words:
        used |= w.mask
        ones |= w.mask & w.bits
        zeros |= w.mask & ~w.bits
    return used, zeros, ones


def find_regular_partition(t: DominoTiling) -> Optional[RegularityCertificate]:
    """Search for the canonical certifying partition, or None.

    Non-star columns conflict when some word fixes both; a valid partition is
    a proper d-coloring of that conflict graph (each word's support is a
    d-clique, so one coordinate per group follows).  Any non-star column must
    carry both a 0 and a 1 somewhere, otherwise its one-hot row set is
    incomplete.  Backtracking assigns the least feasible group to columns in
    ascending order, which yields the lexicographically least assignment and
    orders the groups by their first elements.
    """
    n, d = t.n, t.d
    used, zeros, ones = _column_data(t)
    stars = tuple(j for j in range(n) if not used >> j & 1)
    nonstar = [j for j in range(n) if used >> j & 1]
    if any(not (zeros >> j & 1 and ones >> j & 1) for j in nonstar):
        return None

    conflict = [0] * n
    for w in t.words:
        for j in w.prop():
            conflict[j] |= w.mask
    group_mask = [0] * d
    assignment: dict[int, int] = {}

    def rec(idx: int) -> bool:
        if idx == len(nonstar):
            return all(group_mask)
        j = nonstar[idx]
        limit = 0
        while limit < d and group_mask[limit]:
            limit += 1
        for g in range(min(limit + 1, d)):
            if conflict[j] & group_mask[g]:
                continue
            group_mask[g] |= 1 << j
            assignment[j] = g
            if rec(idx + 1):
                return True
            group_mask[g] &= ~(1 << j)
            del assignment[j]
        return False

    if not rec(0):
        return None
    groups = tuple(
        tuple(j for j in nonstar if assignment[j] == g) for g in range(d)
    )
    return RegularityCertificate.from_partition(t, groups, stars)


def check_certificate(
    t: DominoTiling, c: RegularityCertificate, *, canonical: bool = True
) -> bool:
    """Verify a certificate against a tiling.

    With ``canonical`` the group order must follow the first-element rule used
    by :func:`find_regular_partition`; internal bookkeeping (the shift
    transpiler) checks partitions with ``canonical=False``.
    """
    n, d = t.n, t.d
    if len(c.groups) != d:
        return False
    cols = [j for g in c.groups for j in g] + list(c.stars)
    if sorted(cols) != list(range(n)) or len(set(cols)) != n:
        return False
    if any(not g for g in c.groups):
        return False
    used, zeros, ones = _column_data(t)
    if set(c.stars) != {j for j in range(n) if not used >> j & 1}:
        return False
    if canonical:
        firsts = [min(g) for g in c.groups]
        if firsts != sorted(firsts):
            return False
    for g, rows in zip(c.groups, c.witness_rows):
        gm = 0
        for j in g:
            gm |= 1 << j
        for w in t.words:
            count = bin(w.mask & gm).count("1")
            if count != 1:
                return False
        if set(rows) != _one_hot_rows(len(g)):
            return False
        if {w.restrict(g) for w in t.words} != set(rows):
            return False
    if c.stars:
        if c.star_row != TritWord.parse("*" * len(c.stars)):
            return False
    elif c.star_row is not None:
        return False
    return True


def simple_components(t: DominoTiling) -> list[SimpleComponent]:
    """Partition of the words by their fixed-coordinate set, ordered by support."""
    by_support: dict[tuple[int, ...], list[TritWord]] = {}
    for w in t.sorted_words:
        by_support.setdefault(w.prop(), []).append(w)
    return [
        SimpleComponent(s, tuple(ws)) for s, ws in sorted(by_support.items())
    ]


def is_simple(t: DominoTiling) -> bool:
    """True when all words share one support; such tilings are always regular."""
    simple = len(simple_components(t)) == 1
    if simple:
        assert find_regular_partition(t) is not None
    return simple


def simple_tiling(n: int, support: tuple[int, ...]) -> DominoTiling:
    """The unique tiling whose words all fix exactly the given columns."""
    from itertools import product

    support = tuple(sorted(support))
    if len(set(support)) != len(support) or any(not 0 <= j < n for j in support):
        raise DomboxError(f"bad support {support} for n={n}")
    words = set()
    for pattern in product("01", repeat=len(support)):
        w = TritWord.parse("*" * n)
        for ch, j in zip(pattern, support):
            w = w.with_trit(j, ch)
        words.add(w)
    return DominoTiling(n, len(support), frozenset(words))
