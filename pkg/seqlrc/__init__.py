"""Locally 2-reconstructible codes: GHW profiles, bounds, Turán constructions and completions."""
from seqlrc.algebra import GF2, FieldMatrix, PrimeField, null_space_basis, rank, rank_of_columns, rref
from seqlrc.bounds import (
    BoundReport,
    BoundSequence,
    compare_table,
    e_sequence,
    gopalan_bound,
    pkl_bound,
    seq_dmin_bound,
    single_dmin_bound,
    wz_bound,
)
from seqlrc.code import (
    GhwProfile,
    LinearCode,
    enumerate_cores,
    find_core_within,
    ghw_profile,
    is_core,
    low_weight_dual_subcode,
    min_distance,
    subcode_dim_on,
    wei_duality_check,
)
from seqlrc.completion import CompletionRequest, CompletionResult, complete, verify_theorem3, verify_theorem4
from seqlrc.config import Limits
from seqlrc.errors import (
    DomainError,
    InvalidParametersError,
    InvariantViolation,
    PreconditionError,
    ResourceLimitError,
    RetryExhaustedError,
    SeqLrcError,
)
from seqlrc.locality import (
    CoverMap,
    cover_map,
    dimension_and_rate_check,
    is_locally_2_reconstructible,
    sequential_recovery_check,
    unique_coverage_counts,
)
from seqlrc.turan import TuranDesign, closed_form_fm, min_union, turan_b0, turan_design

__version__ = "0.1.0"
