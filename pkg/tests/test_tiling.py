import pytest

from dombox.core import DomboxError, FormatError, InvalidTilingError, TritWord
from dombox.tiling import (
    DominoTiling,
    FlipStep,
    Region,
    apply_flip,
    cells_of_words,
    enumerate_flips,
    enumerate_tilings,
    exact_cover_ok,
    find_twin_pairs,
    format_flip,
    format_flip_sequence,
    format_tiling,
    full_box,
    glue,
    parse_flip,
    parse_flip_sequence,
    parse_tiling,
    replay_flips,
    star_reduce,
    to_box,
    validate_tiling,
)

from conftest import EX3D_ROWS, TABLE1_ROWS, TWIN_FREE_4D_ROWS, words


def w(s):
    return TritWord.parse(s)


def tile(rows, n, d):
    return validate_tiling(words(rows), n, d)


class TestValidateTiling:
    def test_table1(self, table1):
        assert table1.n == 7 and table1.d == 3
        assert len(table1.words) == 8

    def test_square_halves(self):
        t = tile(["0*", "1*"], 2, 1)
        assert t.star_columns() == (1,)

    def test_twin_free_4d(self, twin_free_4d):
        assert len(twin_free_4d.words) == 8

    def test_cardinality_error(self):
        with pytest.raises(InvalidTilingError, match="expected 4 words"):
            tile(["00", "01", "10"], 2, 2)

    def test_prop_count_error(self):
        with pytest.raises(InvalidTilingError, match="fixes"):
            tile(["0*", "10"], 2, 1)

    def test_dichotomy_error_names_pair(self):
        try:
            tile(["0*", "*0"], 2, 1)
        except InvalidTilingError as e:
            assert e.witness == (w("*0"), w("0*"))
        else:
            pytest.fail("expected rejection")

    def test_cyclic_variant_is_still_a_tiling(self):
        from conftest import CYCLIC_4D_ROWS

        t = tile(CYCLIC_4D_ROWS, 4, 3)
        assert len(find_twin_pairs(t)) == 3

    def test_d_zero_rejected(self):
        with pytest.raises(InvalidTilingError):
            validate_tiling([w("**")], 2, 0)

    def test_n_equal_d_boundary_accepted(self):
        t = tile(["00", "01", "10", "11"], 2, 2)
        assert t.star_columns() == ()


class TestTwinPairsAndFlips:
    def test_twin_free(self, twin_free_4d):
        assert find_twin_pairs(twin_free_4d) == []

    def test_square(self):
        t = tile(["0*", "1*"], 2, 1)
        pairs = find_twin_pairs(t)
        assert len(pairs) == 1
        assert pairs[0][1] == 0

    def test_table1_contains_known_pair(self, table1):
        pairs = find_twin_pairs(table1)
        assert ((w("*00*1**"), w("*10*1**")), 1) in pairs

    def test_flip_count_is_free_axis_count(self):
        t = tile(["**0", "**1"], 3, 1)
        steps = enumerate_flips(t, (w("**0"), w("**1")))
        assert len(steps) == 2
        inserted = {s.inserted for s in steps}
        assert inserted == {(w("0**"), w("1**")), (w("*0*"), w("*1*"))}

    def test_single_flip_square(self):
        t = tile(["0*", "1*"], 2, 1)
        steps = enumerate_flips(t, (w("0*"), w("1*")))
        assert len(steps) == 1
        assert steps[0].inserted == (w("*0"), w("*1"))

    def test_table1_pair_has_four_flips(self, table1):
        steps = enumerate_flips(table1, (w("*00*1**"), w("*10*1**")))
        assert len(steps) == 4
        assert (w("**001**"), w("**011**")) in {s.inserted for s in steps}

    def test_pair_not_in_tiling(self, table1):
        with pytest.raises(DomboxError):
            enumerate_flips(table1, (w("0000000"), w("1000000")))


class TestApplyFlip:
    def test_square_flip(self):
        t = tile(["0*", "1*"], 2, 1)
        step = enumerate_flips(t, (w("0*"), w("1*")))[0]
        t2 = apply_flip(t, step)
        assert t2.words == frozenset({w("*0"), w("*1")})

    def test_flip_then_inverse_restores(self, table1):
        for pair, _axis in find_twin_pairs(table1):
            for step in enumerate_flips(table1, pair):
                t2 = apply_flip(table1, step)
                assert replay_flips(t2, [step.inverse()]) == table1

    def test_flip_preserves_shape(self, table1):
        step = enumerate_flips(table1, (w("*00*1**"), w("*10*1**")))[0]
        t2 = apply_flip(table1, step)
        assert (t2.n, t2.d, len(t2.words)) == (7, 3, 8)

    def test_removed_pair_absent(self, table1):
        t = tile(["0*", "1*"], 2, 1)
        step = FlipStep((w("*0"), w("*1")), 1, (w("0*"), w("1*")), 0)
        with pytest.raises(DomboxError):
            apply_flip(t, step)


class TestGeometry:
    def test_to_box(self):
        assert to_box(w("**0")) == [(0, 2), (0, 2), (0, 1)]
        assert to_box(w("0000")) == [(0, 1)] * 4
        assert to_box(w("***")) == [(0, 2)] * 3

    def test_glue(self):
        assert glue(w("**0"), w("**1")) == w("***")
        with pytest.raises(DomboxError):
            glue(w("0*"), w("01"))


class TestStarReduce:
    def test_table1(self, table1):
        reduced, gone = star_reduce(table1)
        assert gone == (6,)
        assert reduced.n == 6 and reduced.d == 3
        assert validate_tiling(reduced.words, 6, 3)

    def test_irreducible_identity(self, ex3d):
        reduced, gone = star_reduce(ex3d)
        assert gone == ()
        assert reduced == ex3d

    def test_multiple_columns(self):
        t = tile(["00***", "01***", "10***", "11***"], 5, 2)
        reduced, gone = star_reduce(t)
        assert gone == (2, 3, 4)
        assert reduced.n == 2


class TestEnumerateTilings:
    def test_square(self):
        result = list(enumerate_tilings(full_box(2), 1))
        # deterministic: the cover starting with the smallest word comes first
        assert result == [
            frozenset({w("*0"), w("*1")}),
            frozenset({w("0*"), w("1*")}),
        ]

    # frozen oracle counts; (n, n-1) cases equal the perfect matching
    # counts of the n-cube graph: 2, 9, 272
    @pytest.mark.parametrize(
        "n,d,count",
        [(2, 1, 2), (3, 2, 9), (4, 3, 272), (3, 1, 3), (4, 2, 30), (5, 2, 70)],
    )
    def test_full_box_counts(self, n, d, count):
        assert sum(1 for _ in enumerate_tilings(full_box(n), d)) == count

    def test_contains_twin_free(self, twin_free_4d):
        assert twin_free_4d.words in set(enumerate_tilings(full_box(4), 3))

    def test_indivisible_region(self):
        with pytest.raises(DomboxError):
            next(enumerate_tilings(Region(2, frozenset({0})), 1))

    def test_untileable_region_empty_stream(self):
        # two opposite corner cells of the square cannot be covered by dominoes
        region = Region(2, frozenset({0b00, 0b11}))
        assert list(enumerate_tilings(region, 1)) == []

    def test_partial_region(self):
        # half the cube: cells with coordinate 3 equal to 1
        region = Region(3, frozenset({0b100, 0b101, 0b110, 0b111}))
        covers = list(enumerate_tilings(region, 2))
        assert frozenset({w("0*1"), w("1*1")}) in covers
        assert frozenset({w("*01"), w("*11")}) in covers
        assert len(covers) == 2


class TestCoverOracle:
    def test_agrees_on_enumerated(self):
        for n, d in [(2, 1), (3, 2)]:
            for ws in enumerate_tilings(full_box(n), d):
                assert exact_cover_ok(ws, n)
                assert validate_tiling(ws, n, d)

    def test_rejects_overlap(self):
        assert not exact_cover_ok([w("0*"), w("1*"), w("*0")], 2)

    def test_rejects_gap(self):
        assert not exact_cover_ok([w("0*")], 2)

    def test_cells_of_words(self):
        cells = cells_of_words([w("0*"), w("1*")])
        assert cells == frozenset({0b00, 0b01, 0b10, 0b11})


class TestTextFormat:
    def test_round_trip(self, table1):
        text = format_tiling(table1)
        assert parse_tiling(text) == table1
        assert format_tiling(parse_tiling(text)) == text

    def test_comments_and_blanks(self):
        text = "# a comment\n\n2 1\n0*  # trailing\n1*\n"
        t = parse_tiling(text)
        assert t.words == frozenset({w("0*"), w("1*")})

    def test_bad_header(self):
        with pytest.raises(FormatError):
            parse_tiling("two one\n0*\n1*\n")

    def test_wrong_word_count(self):
        with pytest.raises(FormatError):
            parse_tiling("2 1\n0*\n")

    def test_flip_line_round_trip(self, table1):
        step = enumerate_flips(table1, (w("*00*1**"), w("*10*1**")))[0]
        line = format_flip(step)
        assert parse_flip(line) == step
        seq = format_flip_sequence([step, step.inverse()])
        assert parse_flip_sequence(seq) == [step, step.inverse()]
