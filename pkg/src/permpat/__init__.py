"""Permutation patterns, single-pass sorting operators, and sorting-preimage bases.

The package answers three kinds of question:

* what does one pass of stack- or bubble-sorting do to a permutation;
* does a permutation contain a pattern (classical, mesh, marked, barred or
  decorated), and where;
* which marked mesh patterns characterize the permutations that a sorting
  pass maps into a pattern-avoidance class, and is a proposed basis correct.
"""

from .errors import (
    InvalidBoundError,
    InvalidInputError,
    InvalidInsertionError,
    PatternSyntaxError,
    UnsupportedFormatError,
    UnsupportedPatternError,
)
from .formats import format_pattern, parse_pattern, parse_pattern_list, render_grid
from .oracle import (
    FIXTURE_NAMES,
    REASON_BAD_IMAGE,
    REASON_CONTAINS_BASIS,
    VerificationReport,
    av_set,
    builtin_basis,
    census,
    preimage_av_set,
    reference_count,
    verify_preimage,
)
from .patterns import (
    Box,
    Decoration,
    Mark,
    Occurrence,
    Pattern,
    Rect,
    avoids,
    barred,
    barred_to_mesh,
    box_rectangle,
    canonicalize,
    classical,
    contains,
    decorated,
    marked,
    mesh,
    occurrences,
    pattern_sort_key,
)
from .permutation import (
    OPERATOR_IDS,
    Permutation,
    ValuePairSets,
    as_word,
    bubble_sort,
    inversion_tables,
    is_identity_after,
    pattern_of_values,
    sort_power,
    stack_sort,
    standardize,
)
from .preimage import (
    MarkedBasis,
    ShadeMarkResult,
    candidate_outcomes,
    expand_basis,
    expand_marks,
    insert_point,
    prune_basis,
    shade_and_mark,
    stack_preimage_basis,
    un_s,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Decoration",
    "FIXTURE_NAMES",
    "InvalidBoundError",
    "InvalidInputError",
    "InvalidInsertionError",
    "Mark",
    "MarkedBasis",
    "OPERATOR_IDS",
    "Occurrence",
    "Pattern",
    "PatternSyntaxError",
    "Permutation",
    "REASON_BAD_IMAGE",
    "REASON_CONTAINS_BASIS",
    "Rect",
    "ShadeMarkResult",
    "UnsupportedFormatError",
    "UnsupportedPatternError",
    "ValuePairSets",
    "VerificationReport",
    "as_word",
    "av_set",
    "avoids",
    "barred",
    "barred_to_mesh",
    "box_rectangle",
    "bubble_sort",
    "builtin_basis",
    "candidate_outcomes",
    "canonicalize",
    "census",
    "classical",
    "contains",
    "decorated",
    "expand_basis",
    "expand_marks",
    "format_pattern",
    "insert_point",
    "inversion_tables",
    "is_identity_after",
    "marked",
    "mesh",
    "occurrences",
    "parse_pattern",
    "parse_pattern_list",
    "pattern_of_values",
    "pattern_sort_key",
    "preimage_av_set",
    "prune_basis",
    "reference_count",
    "render_grid",
    "shade_and_mark",
    "sort_power",
    "stack_preimage_basis",
    "stack_sort",
    "standardize",
    "un_s",
    "verify_preimage",
]
