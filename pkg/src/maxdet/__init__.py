"""Exact constructions, bounds and certificates for the maximal determinant problem."""

from .bounds import (
    BoundKind,
    BoundValue,
    barba_bound_sq,
    bound_for,
    ehlich_optimal_partition,
    ehlich_partition_det,
    ehlich_smooth_bound,
    ew_bound,
    hadamard_bound_sq,
    ratio_decimal,
)
from .circulant import CirculantPair
from .constructions import (
    Construction,
    ConstructionCertificate,
    Family,
    Partition,
    affine_plane,
    brouwer_whiteman,
    bw_N,
    bw_ortho_M,
    cohn_border,
    doubling,
    ehlich_block_matrix,
    excess_border,
    osds,
    paley_I,
    sylvester,
    two_circulant_border,
)
from .feasibility import FeasibilityReport, feasibility, is_perfect_square, sum_of_two_squares
from .field import PrimeModulus, paley_core, quadratic_character, shifted_core
from .linalg import (
    SignMatrix,
    ZMatrix,
    block_assemble,
    block_jj_det,
    col_sums,
    det_exact,
    excess,
    gram,
    row_sums,
    tensor,
)
from .search import circulant_pair_search, exhaustive_maxdet, gamma_oracle
from .verify import GramClass, GramTag, VerificationReport, classify_gram, is_hadamard, normalize_rows, verify

__version__ = "0.1.0"
