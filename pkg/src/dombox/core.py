"""Shared primitives: trit words over {0,1,*} and the primed-letter alphabet.

A trit word encodes an axis-aligned box inside [0,2]^n: character ``0`` means
the factor [0,1], ``1`` means [1,2] and ``*`` means the full interval [0,2].
Letters are interned integers carrying the primed flag in the low bit, so the
complement involution is a single XOR.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Iterator, Optional

#: Words wider than this do not fit the fixed-width masks used everywhere.
#: Useful widths are bounded by 2^d - 1 with d <= 6, so 64 is generous.
MAX_WORD_LEN = 64

STAR = "*"


class DomboxError(Exception):
    """Base class for errors raised by this package."""


class FormatError(DomboxError):
    """Malformed textual input (tiling files, code files, sequence files)."""


class InvalidTilingError(DomboxError):
    """A word set violating a tiling invariant; carries the first witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidCodeError(DomboxError):
    """A word set violating a cube-code invariant; carries the first witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SearchStatus(enum.Enum):
    """Outcome of a bounded connectivity search.

    PROVEN_ABSENT means the whole reachable space was expanded without finding
    the target; BUDGET_EXHAUSTED means the search stopped early and proves
    nothing.
    """

    FOUND = "found"
    PROVEN_ABSENT = "proven-absent"
    BUDGET_EXHAUSTED = "budget-exhausted"


_TRIT_ORDER = {"*": 0, "0": 1, "1": 2}
_TRIT_CHARS = frozenset("01*")


class TritWord:
    """Immutable fixed-length word over {0,1,*} stored as two bitmasks.

    Bit i of ``mask`` is set when position i holds 0 or 1; bit i of ``bits``
    is that value and is always zero on starred positions.  Position 0 is the
    leftmost character of the text form.  ``key`` packs the trits base-4 in
    text order, so comparing keys of equal-length words is lexicographic
    comparison of their strings under the order ``* < 0 < 1``.
    """

    __slots__ = ("n", "mask", "bits", "key", "_hash")

    def __init__(self, n: int, mask: int, bits: int):
        if not 1 <= n <= MAX_WORD_LEN:
            raise DomboxError(f"word length {n} outside 1..{MAX_WORD_LEN}")
        full = (1 << n) - 1
        if mask & ~full or bits & ~mask:
            raise DomboxError("mask/bits out of range for word length")
        self.n = n
        self.mask = mask
        self.bits = bits
        key = 0
        for i in range(n):
            if mask >> i & 1:
                key = key * 4 + 1 + (bits >> i & 1)
            else:
                key = key * 4
        self.key = key
        self._hash = hash((n, mask, bits))

    @classmethod
    def parse(cls, text: str) -> "TritWord":
        mask = bits = 0
        for i, ch in enumerate(text):
            if ch not in _TRIT_CHARS:
                raise FormatError(f"invalid trit {ch!r} in {text!r}")
            if ch != STAR:
                mask |= 1 << i
                if ch == "1":
                    bits |= 1 << i
        if not text:
            raise FormatError("empty trit word")
        return cls(len(text), mask, bits)

    @classmethod
    def from_trits(cls, trits: Iterable[str]) -> "TritWord":
        return cls.parse("".join(trits))

    def __str__(self) -> str:
        return "".join(self.trit(i) for i in range(self.n))

    def __repr__(self) -> str:
        return f"TritWord({str(self)!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TritWord)
            and self.n == other.n
            and self.mask == other.mask
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "TritWord") -> bool:
        return (self.n, self.key) < (other.n, other.key)

    def trit(self, i: int) -> str:
        if not self.mask >> i & 1:
            return STAR
        return "1" if self.bits >> i & 1 else "0"

    def is_star(self, i: int) -> bool:
        return not self.mask >> i & 1

    def prop(self) -> tuple[int, ...]:
        """Positions holding 0 or 1, ascending."""
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    @property
    def prop_count(self) -> int:
        return bin(self.mask).count("1")

    def with_trit(self, i: int, ch: str) -> "TritWord":
        if not 0 <= i < self.n:
            raise DomboxError(f"position {i} out of range")
        pos = 1 << i
        mask, bits = self.mask & ~pos, self.bits & ~pos
        if ch != STAR:
            mask |= pos
            if ch == "1":
                bits |= pos
        return TritWord(self.n, mask, bits)

    def restrict(self, columns: Iterable[int]) -> "TritWord":
        """Sub-word over the given columns, in the given order."""
        return TritWord.parse("".join(self.trit(j) for j in columns))

    def drop_columns(self, columns: Iterable[int]) -> "TritWord":
        gone = set(columns)
        return TritWord.parse(
            "".join(self.trit(j) for j in range(self.n) if j not in gone)
        )

    def insert(self, i: int, ch: str) -> "TritWord":
        s = str(self)
        return TritWord.parse(s[:i] + ch + s[i:])

    def cells(self) -> Iterator[int]:
        """Unit cells covered by this word, as ints with bit i = coordinate i."""
        stars = [i for i in range(self.n) if not self.mask >> i & 1]
        base = self.bits
        for combo in range(1 << len(stars)):
            c = base
            for k, i in enumerate(stars):
                if combo >> k & 1:
                    c |= 1 << i
            yield c


def is_dichotomous(u: TritWord, q: TritWord) -> bool:
    """True when some position carries 0 in one word and 1 in the other."""
    if u.n != q.n:
        raise DomboxError("length mismatch")
    return bool(u.mask & q.mask & (u.bits ^ q.bits))


def twin_pair_axis(u: TritWord, q: TritWord) -> Optional[int]:
    """Position where u and q differ complementarily, if they agree elsewhere."""
    if u.n != q.n:
        raise DomboxError("length mismatch")
    if u.mask != q.mask:
        return None
    diff = (u.bits ^ q.bits) & u.mask
    if diff and diff & (diff - 1) == 0:
        return diff.bit_length() - 1
    return None


def validate_code(words: Iterable[TritWord]) -> bool:
    """True when all distinct pairs are dichotomous (lengths must agree)."""
    ws = sorted(set(words))
    if not ws:
        return True
    n = ws[0].n
    for w in ws:
        if w.n != n:
            raise DomboxError("length mismatch")
    for a in range(len(ws)):
        for b in range(a + 1, len(ws)):
            if not is_dichotomous(ws[a], ws[b]):
                return False
    # a dichotomous family is capped at 2^d where d is the least fixed count
    dmin = min(w.prop_count for w in ws)
    assert len(ws) <= 1 << dmin
    return True


# ---------------------------------------------------------------------------
# Letters: an abstract alphabet closed under the complement involution.
# A letter is an int (base_id << 1) | primed, so complement(l) == l ^ 1.

Letter = int

_LETTER_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)('?)$")

_base_ids: dict[str, int] = {}
_base_names: list[str] = []


def make_letter(base: str, primed: bool = False) -> Letter:
    if not _LETTER_RE.match(base) or base.endswith("'"):
        raise FormatError(f"invalid letter base {base!r}")
    bid = _base_ids.get(base)
    if bid is None:
        bid = len(_base_names)
        _base_ids[base] = bid
        _base_names.append(base)
    return bid << 1 | bool(primed)


def letter(token: str) -> Letter:
    """Parse a letter token such as ``a1`` or ``a1'``."""
    m = _LETTER_RE.match(token)
    if not m:
        raise FormatError(f"invalid letter token {token!r}")
    return make_letter(m.group(1), m.group(2) == "'")


def letter_name(l: Letter) -> str:
    return _base_names[l >> 1] + ("'" if l & 1 else "")


def letter_base(l: Letter) -> str:
    return _base_names[l >> 1]


def letter_is_primed(l: Letter) -> bool:
    return bool(l & 1)


def letter_complement(l: Letter) -> Letter:
    return l ^ 1


def letter_pair(l: Letter) -> Letter:
    """Unprimed representative of the letter's complementary pair."""
    return l & ~1


_RUNS_RE = re.compile(r"\d+|\D+")


def letter_sort_key(l: Letter):
    """Natural order: alphabetic runs as strings, digit runs as ints, primes last."""
    runs = tuple(
        int(run) if run.isdigit() else run
        for run in _RUNS_RE.findall(_base_names[l >> 1])
    )
    return runs + (l & 1,)
