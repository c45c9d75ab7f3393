"""Tilings of [0,2]^n by boxes with d fixed coordinates, their cube tiling
codes, and flip/shift connectivity machinery."""

from .core import (
    DomboxError,
    FormatError,
    InvalidCodeError,
    InvalidTilingError,
    Letter,
    SearchStatus,
    TritWord,
    is_dichotomous,
    letter,
    letter_complement,
    letter_name,
    make_letter,
    twin_pair_axis,
    validate_code,
)
from .tiling import (
    DominoTiling,
    FlipStep,
    Region,
    apply_flip,
    enumerate_flips,
    enumerate_tilings,
    exact_cover_ok,
    find_twin_pairs,
    format_tiling,
    full_box,
    parse_tiling,
    replay_flips,
    star_reduce,
    to_box,
    validate_tiling,
)
from .regularity import (
    RegularityCertificate,
    SimpleComponent,
    check_certificate,
    find_regular_partition,
    is_simple,
    simple_components,
    simple_tiling,
)
from .codes import (
    CubeCode,
    LetterProfile,
    ShiftStep,
    apply_shift,
    canonical_form,
    enumerate_shifts,
    format_code,
    is_simple_code,
    letter_profile,
    merge_letters,
    parse_code,
    relabel_coordinate,
    replay_shifts,
    shift_path_search,
    validate_cube_code,
)

__version__ = "0.1.0"
