"""A verified toolkit for finite simplicial sets and simplicial groupoids.

Everything is finitely presented and exhaustively checkable: simplicial
sets by their nondegenerate simplices, groupoids by full structure
tables, simplicial groupoids internally, bisimplicial sets as lazy rows.
On top sit homology, fundamental groupoids, matching and latching
objects, Reedy and Kan checkers, complete lifting-problem solvers, and a
command line for the batch verification suites.
"""

from .words import (
    SimplexRef,
    SimplexWord,
    WordError,
    apply_degens,
    degen_word,
    degeneracy_tuples,
    degens_of_surjection,
    face_word,
    make_word,
    strip_degen,
    strip_degens,
    surjection_of_word,
    validate_word,
)
from .sset import (
    Coequalizer,
    Coproduct,
    FinSSet,
    MapCheck,
    Pushout,
    SSetCheck,
    SSetMap,
    Subcomplex,
    TruncationError,
    TupleSSet,
    ValidationError,
    boundary,
    builtin_complex,
    char_map,
    check_map,
    check_sset,
    colimit,
    compose_maps,
    constant_map,
    enumerate_maps,
    faces_containing,
    horn,
    identity_map,
    invert_iso,
    joined_tuples,
    normalize_word,
    pairing,
    product,
    product_many,
    pullback,
    simplex,
    simplex_inclusion,
    simplex_map,
    truncate,
    vertex_inclusion,
)
from .builder import BuiltSSet, build_sset, map_from_raw
from .homology import HomologyProfile, boundary_matrix, homology, smith_invariants
from .fundamental import (
    CapExceeded,
    PresentedGroupoid,
    fundamental_groupoid,
    group_from_coset_table,
    pi1_realized,
    realize_groupoid,
    todd_coxeter,
    vertex_group_presentation,
)
from .groupoid import (
    ArrowGpd,
    FinGroupoid,
    GpdClassification,
    GpdFunctor,
    GpdNatIso,
    GpdSpan,
    arrow_groupoid,
    chaotic_gpd,
    classify_gpd_map,
    compose_functors,
    composable_strings,
    constant_functor,
    cyclic_gpd,
    discrete_gpd,
    disjoint_union_gpd,
    enumerate_functors,
    enumerate_nat_isos,
    functor_groupoid,
    groupoid_from_homs,
    identity_functor,
    interval_gpd,
    is_equivalent_gpd,
    is_isomorphic_gpd,
    lax_fiber_product,
    nerve,
    nerve_functor,
    strict_fiber_product,
    strict_to_lax_comparison,
    string_degen,
    string_face,
    terminal_gpd,
)
from .sgpd import (
    HomGroupoid,
    LatchingObject,
    MatchingObject,
    ReedyLevel,
    ReedyReport,
    SGpdMap,
    SGpdNatIso,
    SGpdSpan,
    SimpGroupoid,
    chaotic_resolution,
    check_reedy,
    compose_sgpd_maps,
    constant_sgpd,
    constant_sgpd_map,
    discrete_sgpd,
    discrete_sgpd_map,
    hom_groupoid,
    hom_postcompose,
    hom_restrict,
    identity_nat_iso,
    identity_sgpd_map,
    latching_object,
    level_functor,
    level_groupoid,
    make_sgpd,
    matching_object,
    reedy_gap,
    resolution_map,
    resolution_unit,
    row,
    row_degen,
    row_face,
    row_map,
    row_view,
    sgpd_fiber_product,
    sgpd_product,
    strict_to_lax_sgpd,
)
from .bisset import (
    BiReedyLevel,
    BiReedyReport,
    BiSSet,
    BiSSetMap,
    DStar,
    bisset_matching,
    bisset_matching_restriction,
    d_star,
    d_star_agreement,
    d_star_generic_row,
    diag,
    diag_built,
    diag_map,
    dstar_transpose,
    dstar_unit,
    dstar_untranspose,
    exterior,
    exterior_map,
    homotopy_ends,
    nat_iso_to_homotopy,
    nerve_bisset,
    nerve_bisset_map,
    reedy_check_bisset,
    sing,
    sing_built,
    sing_map,
    word_classifying_map,
    word_realizing_map,
)
from .lifting import (
    FibrationReport,
    GpdLiftingProblem,
    JardineReport,
    LiftSearch,
    LiftingProblem,
    ObstructionTrace,
    WeakLiftSpace,
    WeakSolution,
    classify_sset_fibration,
    cylinder,
    jardine_criterion,
    solve_strict,
    solve_weak,
    strictify_lift,
    validate_weak_solution,
    weak_lift_space,
)
from .io import FORMAT, FormatError, parse, parse_data, serialize, serialize_data

__version__ = "0.1.0"
