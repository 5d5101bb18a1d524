"""Factor permutations of product sets into alternating row and column stages."""

from __future__ import annotations

from .census import (
    CensusReport,
    LowerBoundReport,
    PermSet,
    census,
    hierarchy,
    lower_bound_check,
    product_set,
    union_gap_table,
)
from .decompose import (
    MultiGridPermutation,
    MultiStage,
    SparseDecomposition,
    SparsePermutation,
    Verification,
    decompose_finite_support,
    decompose_multi,
    decompose_two,
    fiber_permutations,
    multi_schedule,
    verify_decomposition,
    verify_multi,
    verify_sparse,
)
from .errors import (
    AltDiamError,
    ConsistencyViolation,
    DimensionMismatch,
    DuplicateSource,
    FieldTooLarge,
    InstanceTooLarge,
    MissingSource,
    NoPerfectMatching,
    NotBalanced,
    NotInjective,
    NotInvertible,
    RangeViolation,
    UnsupportedWord,
)
from .grid import (
    Decomposition,
    GridPermutation,
    Kind,
    Stage,
    as_grid_permutation,
    build,
    compose,
    compose_all,
    in_word,
    invert,
    normalize_word,
    stage_kind,
)
from .linalg import (
    BlockSplit,
    FieldMatrix,
    LinearDecomposition,
    LinearStage,
    PrimeField,
    decompose_linear,
    decompose_linear_rlr,
    in_LR_linear_counterexample_check,
    linear_stage_kind,
    swap_not_in_lr,
)
from .matching import Matching, MultiplicityMatrix, hall_matching, multiplicity_matrix
from .posets import (
    FinitePoset,
    MonotoneBijection,
    antichain,
    automorphisms,
    chain,
    diamond,
    flip_generated,
    product,
    stage_subgroups,
)

__version__ = "0.1.0"
