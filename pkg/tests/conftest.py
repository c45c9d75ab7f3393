"""Shared fixtures: the reference tilings and codes used throughout the suite."""

import pytest

from dombox.core import TritWord, letter
from dombox.codes import validate_cube_code
from dombox.tiling import validate_tiling

# Regular tiling of [0,2]^7 with 8 boxes, one all-star column at position 7.
TABLE1_ROWS = [
    "0*0*0**",
    "1*1*1**",
    "*00*1**",
    "*10*1**",
    "0*1**1*",
    "0*1**0*",
    "1**00**",
    "1**10**",
]

# Tiling of [0,2]^4 with no twin pair at all: three cyclic patterns plus the
# two corner boxes, each taken together with its full complement.
TWIN_FREE_4D_ROWS = [
    "*010",
    "*101",
    "1*00",
    "0*11",
    "01*0",
    "10*1",
    "000*",
    "111*",
]

# Same cyclic patterns with the last trit varied instead; still a valid
# tiling, but this variant does contain twin pairs.
CYCLIC_4D_ROWS = [
    "*010",
    "*011",
    "1*00",
    "1*01",
    "01*0",
    "01*1",
    "000*",
    "111*",
]

# Small regular tiling of [0,2]^3 with a two-column group.
EX3D_ROWS = ["0*0", "1*0", "*01", "*11"]


def words(rows):
    return [TritWord.parse(r) for r in rows]


def code_words(rows):
    return [tuple(letter(tok) for tok in row.split()) for row in rows]


@pytest.fixture
def table1():
    return validate_tiling(words(TABLE1_ROWS), 7, 3)


@pytest.fixture
def twin_free_4d():
    return validate_tiling(words(TWIN_FREE_4D_ROWS), 4, 3)


@pytest.fixture
def ex3d():
    return validate_tiling(words(EX3D_ROWS), 3, 2)


FIG2_V_ROWS = ["a a", "a a'", "a' b", "a' b'"]
FIG2_W_ROWS = ["c c", "c' c", "b c'", "b' c'"]

# The four gluing-and-cutting moves taking V to W, in order:
# each entry is (axis, removed pair, inserted pair), 1-based axis.
FIG2_SHIFTS = [
    (2, ("a a", "a a'"), ("a c", "a c'")),
    (2, ("a' b", "a' b'"), ("a' c", "a' c'")),
    (1, ("a c'", "a' c'"), ("b c'", "b' c'")),
    (1, ("a c", "a' c"), ("c c", "c' c")),
]


@pytest.fixture
def fig2_v():
    return validate_cube_code(code_words(FIG2_V_ROWS))


@pytest.fixture
def fig2_w():
    return validate_cube_code(code_words(FIG2_W_ROWS))
