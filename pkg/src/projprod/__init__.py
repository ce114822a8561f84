"""Products of two orthogonal projections, numerically.

Finite-dimensional classification and decomposition of ``T = P1 P2``,
alternating projections, and the Hardy-space layer (inner and model
projections of finite Blaschke products) by truncation.
"""

from .alternating import IterationRecord, IterationTrace, c00_decay_check, iterate_product, von_neumann_limit
from .blaschke import BlaschkeProduct, blaschke_eval, blaschke_gcd, blaschke_lcm, divides
from .errors import (
    ClassificationError,
    ConfigError,
    ConsistencyError,
    DimensionError,
    DomainError,
    EmptyFamilyError,
    InputError,
    ProjprodError,
    TruncationError,
)
from .hardy import (
    HardyTruncation,
    InnerPair,
    inner_projection_matrix,
    intersection_dimension,
    largest_invariant_inside,
    model_projection_matrix,
    model_space_frame,
    product_inner_check,
    product_model_check,
    range_inner_function,
    smallest_beurling_containing,
)
from .hilbert import (
    DEFAULT_TOL,
    Subspace,
    Tolerances,
    complement,
    intersect,
    join,
    kernel,
    orthonormal_range,
    projector,
    subspace_equal,
)
from .kernels import BACKEND
from .obstructions import kernel_inner_divisor_check, mismatched_range_verifier
from .products import (
    ProjectionPair,
    canonical_decomposition,
    canonical_factorization,
    classify,
    kernel_decomposition,
    unitary_part,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
