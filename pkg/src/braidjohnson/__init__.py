"""
Braid Johnson

Exact integer invariants of braid words: crossing matrices, the Artin action on
the free group, the degree-2 Magnus expansion and the extended first Johnson
map τ₁θ, together with the cord invariant of simple braids and the image sets
of the crossing-matrix map.
"""
__version__ = "0.1.0"

from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    Permutation,
    concat,
    conjugate,
    inverse,
    parse_braid_word,
    underlying_permutation,
)
from braidjohnson.crossing import (
    ConventionError,
    CrossingMatrix,
    HVector,
    crossing_matrix,
    diving_info,
    lift_C,
)
from braidjohnson.free_group import FreeWord, abelianize
from braidjohnson.artin import apply_artin, artin_abelianized
from braidjohnson.magnus_johnson import WedgeMap, delta, lift_tau, magnus, tau1
from braidjohnson.simple_braids import SimpleBraid, construct_from_invariant, v_invariant
from braidjohnson.matrix_sets import (
    is_in_image_C,
    is_perm_braid_matrix,
    permutation_braid,
    search_positive_pure_realizations,
)
