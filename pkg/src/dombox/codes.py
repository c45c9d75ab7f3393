"""Cube tiling codes over the primed-letter alphabet.

A cube tiling code is a set of 2^d star-free words of length d, pairwise
dichotomous.  This module covers validation, twin pairs and shifts, letter
merging and relabeling, letter profiles, exact canonical forms up to
per-coordinate letter renaming, exhaustive enumerators at desk scale, and a
breadth-first shift-path search between two concrete codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    DomboxError,
    FormatError,
    InvalidCodeError,
    Letter,
    SearchStatus,
    letter,
    letter_name,
    letter_pair,
    letter_sort_key,
    make_letter,
)

Word = tuple[Letter, ...]


def word_key(w: Word):
    return tuple(letter_sort_key(l) for l in w)


def format_word(w: Word) -> str:
    return " ".join(letter_name(l) for l in w)


def parse_word(text: str) -> Word:
    tokens = text.split()
    if not tokens:
        raise FormatError("empty code word")
    return tuple(letter(tok) for tok in tokens)


def words_dichotomous(v: Word, w: Word) -> bool:
    return any(a == b ^ 1 for a, b in zip(v, w))


@dataclass(frozen=True)
class CubeCode:
    """A validated cube tiling code: construct through :func:`validate_cube_code`."""

    d: int
    words: frozenset[Word]

    @cached_property
    def sorted_words(self) -> tuple[Word, ...]:
        return tuple(sorted(self.words, key=word_key))

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def coordinate_letters(self, i: int) -> tuple[Letter, ...]:
        return tuple(sorted({w[i] for w in self.words}, key=letter_sort_key))

    def alphabets(self) -> list[set[Letter]]:
        return [set(self.coordinate_letters(i)) for i in range(self.d)]


def validate_cube_code(words: Iterable[Word]) -> CubeCode:
    ws = set(words)
    if not ws:
        raise InvalidCodeError("empty word set")
    d = len(next(iter(ws)))
    for w in ws:
        if len(w) != d:
            raise InvalidCodeError(f"word {format_word(w)} has length {len(w)}, expected {d}", w)
    if len(ws) != 1 << d:
        raise InvalidCodeError(f"expected {1 << d} words, got {len(ws)}")
    ordered = sorted(ws, key=word_key)
    for a in range(len(ordered)):
        for b in range(a + 1, len(ordered)):
            if not words_dichotomous(ordered[a], ordered[b]):
                raise InvalidCodeError(
                    f"words {format_word(ordered[a])} and {format_word(ordered[b])}"
                    " are not dichotomous",
                    (ordered[a], ordered[b]),
                )
    return CubeCode(d, frozenset(ws))


def is_simple_code(code: CubeCode) -> bool:
    """True when each coordinate uses a single complementary letter pair."""
    return all(
        len({letter_pair(l) for l in code.coordinate_letters(i)}) == 1
        for i in range(code.d)
    )


@dataclass(frozen=True)
class LetterProfile:
    """Per-coordinate letter sets and pair counts of a code."""

    letters: tuple[tuple[Letter, ...], ...]
    pair_counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.pair_counts)


def letter_profile(code: CubeCode) -> LetterProfile:
    sets = []
    counts = []
    for i in range(code.d):
        s = code.coordinate_letters(i)
        present = set(s)
        for l in s:
            if l ^ 1 not in present:
                raise InvalidCodeError(
                    f"coordinate {i + 1} letters are not closed under complement"
                )
        sets.append(s)
        counts.append(len(s) // 2)
    return LetterProfile(tuple(sets), tuple(counts))


# ---------------------------------------------------------------------------
# Twin pairs and shifts


@dataclass(frozen=True)
class ShiftStep:
    """Replace the complementary pair of a twin pair at its axis by another."""

    axis: int
    removed: tuple[Word, Word]
    inserted: tuple[Word, Word]

    def inverse(self) -> "ShiftStep":
        return ShiftStep(self.axis, self.inserted, self.removed)


def _word_pair(v: Word, w: Word) -> tuple[Word, Word]:
    return (v, w) if word_key(v) <= word_key(w) else (w, v)


def code_twin_axis(v: Word, w: Word) -> Optional[int]:
    axis = None
    for i, (a, b) in enumerate(zip(v, w)):
        if a == b:
            continue
        if a == b ^ 1 and axis is None:
            axis = i
        else:
            return None
    return axis


def find_code_twin_pairs(code: CubeCode) -> list[tuple[tuple[Word, Word], int]]:
    ws = code.sorted_words
    out = []
    for a in range(len(ws)):
        for b in range(a + 1, len(ws)):
            axis = code_twin_axis(ws[a], ws[b])
            if axis is not None:
                out.append(((ws[a], ws[b]), axis))
    return out


def make_shift(pair: tuple[Word, Word], target: Letter) -> ShiftStep:
    """Shift of a twin pair onto the pair {target, target'} at the same axis."""
    v, w = pair
    axis = code_twin_axis(v, w)
    if axis is None:
        raise DomboxError("not a twin pair")
    if letter_pair(target) == letter_pair(v[axis]):
        raise DomboxError("shift must change the letter pair")
    u = v[:axis] + (letter_pair(target),) + v[axis + 1 :]
    q = v[:axis] + (letter_pair(target) | 1,) + v[axis + 1 :]
    return ShiftStep(axis, _word_pair(v, w), _word_pair(u, q))


def enumerate_shifts(
    code: CubeCode, pair: tuple[Word, Word], alphabet: Iterable[Letter]
) -> list[ShiftStep]:
    """One shift per complementary pair of the alphabet other than the current one."""
    v, w = pair
    if v not in code.words or w not in code.words:
        raise DomboxError("pair is not part of the code")
    axis = code_twin_axis(v, w)
    if axis is None:
        raise DomboxError("not a twin pair")
    letters = set(alphabet)
    pairs = sorted(
        {letter_pair(l) for l in letters if l ^ 1 in letters},
        key=letter_sort_key,
    )
    current = letter_pair(v[axis])
    return [make_shift((v, w), p) for p in pairs if p != current]


def apply_shift(code: CubeCode, step: ShiftStep) -> CubeCode:
    v, w = step.removed
    if v not in code.words or w not in code.words:
        raise DomboxError("removed pair is not part of the code")
    words = (code.words - {v, w}) | set(step.inserted)
    result = CubeCode(code.d, frozenset(words))
    if __debug__:
        validate_cube_code(result.words)
    return result


def replay_shifts(code: CubeCode, steps: Iterable[ShiftStep]) -> CubeCode:
    for step in steps:
        code = apply_shift(code, step)
    return code


# ---------------------------------------------------------------------------
# Letter surgery


def merge_letters(code: CubeCode, i: int, frm: Letter, to: Letter) -> CubeCode:
    """Rewrite frm -> to and frm' -> to' at coordinate i.

    Both pairs must occur at i and be disjoint; the result is again a code
    (words carrying the two pairs at i are dichotomous somewhere else), with
    one less letter pair at coordinate i.
    """
    if letter_pair(frm) == letter_pair(to):
        raise DomboxError("merge requires two distinct letter pairs")
    present = {w[i] for w in code.words}
    if frm not in present or frm ^ 1 not in present:
        raise DomboxError(f"pair of {letter_name(frm)} does not occur at coordinate {i + 1}")
    if to not in present or to ^ 1 not in present:
        raise DomboxError(f"pair of {letter_name(to)} does not occur at coordinate {i + 1}")
    subst = {frm: to, frm ^ 1: to ^ 1}
    words = frozenset(
        w[:i] + (subst.get(w[i], w[i]),) + w[i + 1 :] for w in code.words
    )
    return validate_cube_code(words)


def relabel_coordinate(code: CubeCode, i: int, frm: Letter, to: Letter) -> CubeCode:
    """Substitute frm -> to, frm' -> to' at coordinate i; identity when the
    source pair does not occur there."""
    if letter_pair(frm) == letter_pair(to):
        raise DomboxError("relabel requires two distinct letter pairs")
    present = {w[i] for w in code.words}
    if frm not in present and frm ^ 1 not in present:
        return code
    subst = {frm: to, frm ^ 1: to ^ 1}
    words = frozenset(
        w[:i] + (subst.get(w[i], w[i]),) + w[i + 1 :] for w in code.words
    )
    return validate_cube_code(words)


def permute_coordinates(code: CubeCode, perm: Sequence[int]) -> CubeCode:
    words = frozenset(tuple(w[p] for p in perm) for w in code.words)
    return CubeCode(code.d, words)


# ---------------------------------------------------------------------------
# Canonical forms (exact, up to per-coordinate pair renaming and prime swaps)

Structure = tuple[tuple[int, ...], ...]


def canonical_form(words: Iterable[Word], d: Optional[int] = None) -> Structure:
    """Lexicographically least relabeling of a word set.

    Letters at each coordinate may be renamed by any bijection of the
    complementary pairs, including swapping a pair's primes.  The result rows
    are sorted tuples of ints 2*pair + primed with pairs numbered by first
    occurrence, the unique minimum over all such relabelings and row orders.
    """
    ws = list(words)
    if d is None:
        d = len(ws[0])
    best: Optional[tuple[tuple[int, ...], ...]] = None

    def rec(remaining, maps, fresh, acc):
        nonlocal best
        if not remaining:
            cand = tuple(acc)
            if best is None or cand < best:
                best = cand
            return
        scored = []
        for w in remaining:
            img = []
            f = list(fresh)
            for i, l in enumerate(w):
                got = maps[i].get(letter_pair(l))
                if got is None:
                    img.append(f[i] * 2)
                    f[i] += 1
                else:
                    np_, flip = got
                    img.append(np_ * 2 + ((l & 1) ^ flip))
            scored.append((tuple(img), w))
        m = min(img for img, _ in scored)
        if best is not None:
            prefix = best[: len(acc) + 1]
            if tuple(acc) + (m,) > prefix:
                return
        for img, w in scored:
            if img != m:
                continue
            new_maps = [dict(mp) for mp in maps]
            new_fresh = list(fresh)
            for i, l in enumerate(w):
                p = letter_pair(l)
                if p not in new_maps[i]:
                    new_maps[i][p] = (new_fresh[i], l & 1)
                    new_fresh[i] += 1
            rec([x for x in remaining if x is not w], new_maps, new_fresh, acc + [img])

    rec(ws, [{} for _ in range(d)], [0] * d, [])
    assert best is not None
    return best


def canonical_form_up_to_axes(words: Iterable[Word], d: Optional[int] = None) -> Structure:
    """Minimum of :func:`canonical_form` over all coordinate permutations."""
    ws = list(words)
    if d is None:
        d = len(ws[0])
    return min(
        canonical_form([tuple(w[p] for p in perm) for w in ws], d)
        for perm in permutations(range(d))
    )


def structure_to_code(struct: Structure) -> CubeCode:
    """Materialize a structural form with letters s{i}_{p} per coordinate."""
    words = set()
    for row in struct:
        w = []
        for i, v in enumerate(row):
            w.append(make_letter(f"s{i + 1}_{v // 2 + 1}", bool(v & 1)))
        words.add(tuple(w))
    return validate_cube_code(words)


def structure_pair_counts(struct: Structure) -> tuple[int, ...]:
    d = len(struct[0])
    return tuple(len({row[i] // 2 for row in struct}) for i in range(d))


def enumerate_code_structures(d: int) -> Iterator[Structure]:
    """All cube tiling codes up to per-coordinate letter renaming.

    Rows are generated in strictly increasing order with pairs numbered by
    first occurrence (new pairs enter unprimed), so every abstract code has at
    least one representative here; residual duplicates are possible and
    callers wanting one representative per class should dedup through
    :func:`canonical_form`.
    """
    total = 1 << d
    max_pairs = 1 << (d - 1)

    rows: list[tuple[int, ...]] = [(0,) * d]

    def candidates(last: tuple[int, ...], fresh: list[int]) -> Iterator[tuple[int, ...]]:
        # value at coordinate i ranges over used letters plus one fresh pair
        limits = [min(2 * fresh[i] + 1, 2 * max_pairs) for i in range(d)]

        def build(i: int, prefix: list[int], greater: bool) -> Iterator[tuple[int, ...]]:
            if i == d:
                if greater:
                    yield tuple(prefix)
                return
            lo = 0 if greater else last[i]
            for v in range(lo, limits[i]):
                prefix.append(v)
                yield from build(i + 1, prefix, greater or v > last[i])
                prefix.pop()

        yield from build(0, [], False)

    def closure_ok(final_rows) -> bool:
        for i in range(d):
            seen = {row[i] for row in final_rows}
            if any(v ^ 1 not in seen for v in seen):
                return False
        return True

    def rec(fresh: list[int]) -> Iterator[Structure]:
        if len(rows) == total:
            if closure_ok(rows):
                yield tuple(rows)
            return
        for cand in candidates(rows[-1], fresh):
            if all(any(a == b ^ 1 for a, b in zip(cand, row)) for row in rows):
                new_fresh = [
                    max(fresh[i], cand[i] // 2 + 1) for i in range(d)
                ]
                rows.append(cand)
                yield from rec(new_fresh)
                rows.pop()

    yield from rec([1] * d)


def enumerate_codes_over_alphabet(
    d: int, alphabets: Sequence[Iterable[Letter]]
) -> Iterator[CubeCode]:
    """All cube tiling codes whose coordinate-i letters lie in alphabets[i]."""
    letter_lists = [
        sorted(set(a), key=letter_sort_key) for a in alphabets
    ]
    universe = []

    def build(i: int, prefix: list[Letter]):
        if i == d:
            universe.append(tuple(prefix))
            return
        for l in letter_lists[i]:
            prefix.append(l)
            build(i + 1, prefix)
            prefix.pop()

    build(0, [])
    universe.sort(key=word_key)
    total = 1 << d
    chosen: list[Word] = []

    def rec(start: int) -> Iterator[CubeCode]:
        if len(chosen) == total:
            yield CubeCode(d, frozenset(chosen))
            return
        for idx in range(start, len(universe)):
            w = universe[idx]
            if all(words_dichotomous(w, prev) for prev in chosen):
                chosen.append(w)
                yield from rec(idx + 1)
                chosen.pop()

    yield from rec(0)


# ---------------------------------------------------------------------------
# Shift-path search


@dataclass(frozen=True)
class ShiftSearchResult:
    status: SearchStatus
    steps: tuple[ShiftStep, ...] = ()
    explored: int = 0


def _normalize_alphabets(
    start: CubeCode, goal: Optional[CubeCode], alphabets
) -> list[set[Letter]]:
    d = start.d
    if alphabets is None:
        out = [set(start.coordinate_letters(i)) for i in range(d)]
        if goal is not None:
            for i in range(d):
                out[i] |= set(goal.coordinate_letters(i))
        return out
    if isinstance(alphabets, (set, frozenset)):
        return [set(alphabets) for _ in range(d)]
    out = [set(a) for a in alphabets]
    if len(out) != d:
        raise DomboxError("need one alphabet per coordinate")
    return out


def code_neighbors(
    code: CubeCode,
    alphabets: Sequence[set[Letter]],
    frozen: frozenset[Word] = frozenset(),
) -> list[ShiftStep]:
    """All single shifts within the per-coordinate alphabets, avoiding frozen words."""
    steps = []
    for pair, axis in find_code_twin_pairs(code):
        if pair[0] in frozen or pair[1] in frozen:
            continue
        steps.extend(enumerate_shifts(code, pair, alphabets[axis]))
    return steps


def shift_path_search(
    start: CubeCode,
    goal: CubeCode,
    alphabets=None,
    budget: int = 1_000_000,
    frozen: Iterable[Word] = (),
) -> ShiftSearchResult:
    """Breadth-first search for a shift sequence turning start into goal.

    States are concrete codes (frozensets of words), deduplicated exactly; a
    path therefore replays onto the goal letter for letter.  With ``frozen``
    the removed pair of every step avoids those words.  Alphabets default to
    the per-coordinate letters of start and goal combined, which by the
    relabeling lemma does not lose connectivity.
    """
    if start.d != goal.d:
        raise DomboxError("codes have different lengths")
    frozen = frozenset(frozen)
    alph = _normalize_alphabets(start, goal, alphabets)
    if start.words == goal.words:
        return ShiftSearchResult(SearchStatus.FOUND, (), 1)

    from collections import deque

    parents: dict[frozenset[Word], tuple[Optional[frozenset[Word]], Optional[ShiftStep]]]
    parents = {start.words: (None, None)}
    queue = deque([start.words])
    explored = 0
    truncated = False
    while queue:
        state = queue.popleft()
        explored += 1
        code = CubeCode(start.d, state)
        for step in code_neighbors(code, alph, frozen):
            nxt = (state - set(step.removed)) | set(step.inserted)
            nxt = frozenset(nxt)
            if nxt in parents:
                continue
            parents[nxt] = (state, step)
            if nxt == goal.words:
                steps = []
                cur = nxt
                while parents[cur][0] is not None:
                    prev, st = parents[cur]
                    steps.append(st)
                    cur = prev
                return ShiftSearchResult(
                    SearchStatus.FOUND, tuple(reversed(steps)), explored
                )
            if len(parents) >= budget:
                truncated = True
            else:
                queue.append(nxt)
    status = SearchStatus.BUDGET_EXHAUSTED if truncated else SearchStatus.PROVEN_ABSENT
    return ShiftSearchResult(status, (), explored)


# ---------------------------------------------------------------------------
# Text formats


def parse_code(text: str) -> CubeCode:
    words = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.append(parse_word(line))
    if not words:
        raise FormatError("empty code file")
    d = len(words[0])
    for w in words:
        if len(w) != d:
            raise FormatError("inconsistent word lengths in code file")
    return validate_cube_code(words)


def format_code(code: CubeCode) -> str:
    return "\n".join(format_word(w) for w in code.sorted_words) + "\n"


def format_shift(step: ShiftStep) -> str:
    v, w = step.removed
    u, q = step.inserted
    return (
        f"SHIFT {step.axis + 1}: ({format_word(v)}, {format_word(w)})"
        f" -> ({format_word(u)}, {format_word(q)})"
    )


def parse_shift(line: str) -> ShiftStep:
    import re

    m = re.match(
        r"^SHIFT\s+(\d+):\s*\(([^,()]+),([^,()]+)\)\s*->\s*\(([^,()]+),([^,()]+)\)$",
        line.strip(),
    )
    if not m:
        raise FormatError(f"bad shift line {line!r}")
    axis = int(m.group(1)) - 1
    v, w, u, q = (parse_word(m.group(g)) for g in range(2, 6))
    step = ShiftStep(axis, _word_pair(v, w), _word_pair(u, q))
    if code_twin_axis(v, w) != axis or code_twin_axis(u, q) != axis:
        raise FormatError(f"shift line pairs are not twins at axis {axis + 1}: {line!r}")
    return step


def parse_shift_sequence(text: str) -> list[ShiftStep]:
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            steps.append(parse_shift(line))
    return steps


def format_shift_sequence(steps: Iterable[ShiftStep]) -> str:
    return "".join(format_shift(s) + "\n" for s in steps)
