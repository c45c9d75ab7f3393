"""Box tilings by trit words: validation, twin pairs, flips, star reduction,
and an exhaustive backtracking enumerator used as the ground-truth oracle.

A tiling of [0,2]^n by boxes with exactly d fixed coordinates is a set of 2^d
pairwise dichotomous words, each with d non-star entries.  Volume counting
shows these three conditions already force an exact cover, which is what
``validate_tiling`` relies on; the unit-cell oracle below re-derives covers
from scratch and is kept for tests and region work.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .core import (
    DomboxError,
    FormatError,
    InvalidTilingError,
    TritWord,
    is_dichotomous,
    twin_pair_axis,
)


@dataclass(frozen=True)
class DominoTiling:
    """A validated tiling: construct through :func:`validate_tiling`."""

    n: int
    d: int
    words: frozenset[TritWord]

    @cached_property
    def sorted_words(self) -> tuple[TritWord, ...]:
        return tuple(sorted(self.words))

    @cached_property
    def key(self) -> tuple[int, ...]:
        return tuple(w.key for w in self.sorted_words)

    def __contains__(self, w: TritWord) -> bool:
        return w in self.words

    def star_columns(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        used = 0
        for w in self.words:
            used |= w.mask
        return tuple(j for j in range(self.n) if not used >> j & 1 and full >> j & 1)


@dataclass(frozen=True)
class FlipStep:
    """One flip: a twin pair removed along one axis, another inserted along a
    different axis, both pairs gluing to the same larger box."""

    removed: tuple[TritWord, TritWord]
    removed_axis: int
    inserted: tuple[TritWord, TritWord]
    inserted_axis: int

    def inverse(self) -> "FlipStep":
        return FlipStep(self.inserted, self.inserted_axis, self.removed, self.removed_axis)


@dataclass(frozen=True)
class Region:
    """A set of unit cells of [0,2]^n; cells are ints with bit i = coordinate i."""

    n: int
    cells: frozenset[int]

    def __post_init__(self):
        if any(c >> self.n for c in self.cells):
            raise DomboxError("cell out of range for region dimension")


def full_box(n: int) -> Region:
    return Region(n, frozenset(range(1 << n)))


def cell_text(cell: int, n: int) -> str:
    return "".join("1" if cell >> i & 1 else "0" for i in range(n))


def cells_of_words(words: Iterable[TritWord]) -> frozenset[int]:
    out: set[int] = set()
    for w in words:
        out.update(w.cells())
    return frozenset(out)


def _pair(u: TritWord, q: TritWord) -> tuple[TritWord, TritWord]:
    return (u, q) if u < q else (q, u)


def validate_tiling(words: Iterable[TritWord], n: int, d: int) -> DominoTiling:
    """Check the three tiling invariants and return the tiling, else raise.

    Reports the first violated invariant: cardinality 2^d, exactly d fixed
    entries per word, pairwise dichotomy.
    """
    if d < 1:
        raise InvalidTilingError(f"d={d} must be at least 1")
    if n < d:
        raise InvalidTilingError(f"n={n} smaller than d={d}")
    ws = sorted(set(words))
    for w in ws:
        if w.n != n:
            raise InvalidTilingError(f"word {w} has length {w.n}, expected {n}", w)
    if len(ws) != 1 << d:
        raise InvalidTilingError(f"expected {1 << d} words, got {len(ws)}")
    for w in ws:
        if w.prop_count != d:
            raise InvalidTilingError(
                f"word {w} fixes {w.prop_count} coordinates, expected {d}", w
            )
    for a in range(len(ws)):
        for b in range(a + 1, len(ws)):
            if not is_dichotomous(ws[a], ws[b]):
                raise InvalidTilingError(
                    f"words {ws[a]} and {ws[b]} are not dichotomous",
                    (ws[a], ws[b]),
                )
    return DominoTiling(n, d, frozenset(ws))


def find_twin_pairs(t: DominoTiling) -> list[tuple[tuple[TritWord, TritWord], int]]:
    """All unordered twin pairs with their axis, ordered by word encoding."""
    ws = t.sorted_words
    out = []
    for a in range(len(ws)):
        for b in range(a + 1, len(ws)):
            axis = twin_pair_axis(ws[a], ws[b])
            if axis is not None:
                out.append(((ws[a], ws[b]), axis))
    return out


def glue(u: TritWord, q: TritWord) -> TritWord:
    """Word of the union box of a twin pair: star at the twin axis."""
    axis = twin_pair_axis(u, q)
    if axis is None:
        raise DomboxError(f"{u} and {q} are not a twin pair")
    return u.with_trit(axis, "*")


def enumerate_flips(t: DominoTiling, pair: tuple[TritWord, TritWord]) -> list[FlipStep]:
    """The n-d flips of a twin pair of t, one per star axis of the glued word."""
    u, q = pair
    if u not in t.words or q not in t.words:
        raise DomboxError("pair is not part of the tiling")
    axis = twin_pair_axis(u, q)
    if axis is None:
        raise DomboxError(f"{u} and {q} are not a twin pair")
    g = u.with_trit(axis, "*")
    steps = []
    for k in range(t.n):
        if k != axis and g.is_star(k):
            inserted = _pair(g.with_trit(k, "0"), g.with_trit(k, "1"))
            steps.append(FlipStep(_pair(u, q), axis, inserted, k))
    return steps


def apply_flip(t: DominoTiling, step: FlipStep) -> DominoTiling:
    """Replace the removed twin pair by the inserted one; result is a tiling."""
    u, q = step.removed
    if u not in t.words or q not in t.words:
        raise DomboxError("removed pair is not part of the tiling")
    if glue(*step.removed) != glue(*step.inserted):
        raise DomboxError("flip pairs do not glue to the same box")
    words = (t.words - {u, q}) | set(step.inserted)
    result = DominoTiling(t.n, t.d, frozenset(words))
    if __debug__:
        validate_tiling(result.words, t.n, t.d)
    return result


def replay_flips(t: DominoTiling, steps: Iterable[FlipStep]) -> DominoTiling:
    for step in steps:
        t = apply_flip(t, step)
    return t


def to_box(w: TritWord) -> list[tuple[int, int]]:
    """Interval factors of the box named by w: 0 -> [0,1], 1 -> [1,2], * -> [0,2]."""
    out = []
    for i in range(w.n):
        ch = w.trit(i)
        if ch == "0":
            out.append((0, 1))
        elif ch == "1":
            out.append((1, 2))
        else:
            out.append((0, 2))
    return out


def star_reduce(t: DominoTiling) -> tuple[DominoTiling, tuple[int, ...]]:
    """Delete every all-star column; returns the reduced tiling and the
    deleted column indices, ascending.  Identity when none exist."""
    gone = t.star_columns()
    if not gone:
        return t, ()
    words = frozenset(w.drop_columns(gone) for w in t.words)
    return DominoTiling(t.n - len(gone), t.d, words), gone


def exact_cover_ok(words: Iterable[TritWord], n: int) -> bool:
    """Unit-cell oracle: every cell of {0,1}^n lies in exactly one word.

    Exponential in n; reserved for tests and small regions.
    """
    counts = [0] * (1 << n)
    for w in words:
        if w.n != n:
            return False
        for c in w.cells():
            counts[c] += 1
    return all(c == 1 for c in counts)


def region_candidates(region: Region, d: int) -> list[TritWord]:
    """All words with d fixed coordinates whose cells lie inside the region."""
    from itertools import combinations

    n = region.n
    cand = []
    for support in combinations(range(n), d):
        mask = 0
        for i in support:
            mask |= 1 << i
        for pattern in range(1 << d):
            bits = 0
            for k, i in enumerate(support):
                if pattern >> k & 1:
                    bits |= 1 << i
            w = TritWord(n, mask, bits)
            if all(c in region.cells for c in w.cells()):
                cand.append(w)
    return sorted(cand)


def enumerate_tilings(region: Region, d: int) -> Iterator[frozenset[TritWord]]:
    """Yield every exact cover of the region by words with d fixed entries.

    Backtracks on the lexicographically least uncovered cell; the stream is
    deterministic and exhaustive (no symmetry reduction).
    """
    n = region.n
    if not region.cells:
        raise DomboxError("empty region")
    if len(region.cells) % (1 << (n - d)):
        raise DomboxError(
            f"region size {len(region.cells)} not divisible by {1 << (n - d)}"
        )
    # rank cells in lexicographic order of their coordinate tuples
    ordered = sorted(region.cells, key=lambda c: cell_text(c, n))
    rank = {c: r for r, c in enumerate(ordered)}
    full = (1 << len(ordered)) - 1

    cand = region_candidates(region, d)
    cellmask = []
    for w in cand:
        m = 0
        for c in w.cells():
            m |= 1 << rank[c]
        cellmask.append(m)
    by_rank: list[list[int]] = [[] for _ in ordered]
    for idx, m in enumerate(cellmask):
        for r in range(len(ordered)):
            if m >> r & 1:
                by_rank[r].append(idx)

    chosen: list[TritWord] = []

    def rec(covered: int) -> Iterator[frozenset[TritWord]]:
        if covered == full:
            yield frozenset(chosen)
            return
        r = (~covered & full)
        r = (r & -r).bit_length() - 1
        for idx in by_rank[r]:
            m = cellmask[idx]
            if m & covered:
                continue
            chosen.append(cand[idx])
            yield from rec(covered | m)
            chosen.pop()

    yield from rec(0)


# ---------------------------------------------------------------------------
# Text format: header line "n d", then 2^d lines of n trits.  Blank lines and
# '#' comments are ignored.  The writer emits words in sorted order, so a
# formatted tiling re-parses to an equal value.


def parse_tiling(text: str) -> DominoTiling:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty tiling file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"expected header 'n d', got {lines[0]!r}")
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    words = []
    for line in lines[1:]:
        if len(line) != n:
            raise FormatError(f"word {line!r} does not have length {n}")
        words.append(TritWord.parse(line))
    if len(words) != 1 << d:
        raise FormatError(f"expected {1 << d} words, found {len(words)}")
    return validate_tiling(words, n, d)


def format_tiling(t: DominoTiling) -> str:
    return "\n".join([f"{t.n} {t.d}"] + [str(w) for w in t.sorted_words]) + "\n"


# Flip sequence lines: "FLIP i->k: (u, q) => (u', q')" with 1-based axes.


def format_flip(step: FlipStep) -> str:
    u, q = step.removed
    a, b = step.inserted
    return (
        f"FLIP {step.removed_axis + 1}->{step.inserted_axis + 1}: "
        f"({u}, {q}) => ({a}, {b})"
    )


def parse_flip(line: str) -> FlipStep:
    import re

    m = re.match(
        r"^FLIP\s+(\d+)->(\d+):\s*\(([01*]+),\s*([01*]+)\)\s*=>\s*"
        r"\(([01*]+),\s*([01*]+)\)$",
        line.strip(),
    )
    if not m:
        raise FormatError(f"bad flip line {line!r}")
    i, k = int(m.group(1)) - 1, int(m.group(2)) - 1
    u, q, a, b = (TritWord.parse(m.group(g)) for g in range(3, 7))
    return FlipStep(_pair(u, q), i, _pair(a, b), k)


def parse_flip_sequence(text: str) -> list[FlipStep]:
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            steps.append(parse_flip(line))
    return steps


def format_flip_sequence(steps: Iterable[FlipStep]) -> str:
    return "".join(format_flip(s) + "\n" for s in steps)
