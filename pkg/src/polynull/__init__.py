"""Exact rank and small-degree left nullspace bases of polynomial matrices over F_p."""

from .errors import (
    DimensionMismatch,
    Fail,
    FieldTooSmall,
    IndependenceLost,
    KappaMismatch,
    MatrixParseError,
    ModulusMismatch,
    NotRowReduced,
    PolynullError,
    RankCandidateWrong,
    SingularAtZero,
    SingularMatrix,
    TooLarge,
)
from .field import DEFAULT_PRIME, NEG_INF, FieldElement, FieldSpec, Poly
from .nullspace import (
    MinimalVectorsResult,
    Nullspace2nResult,
    NullspaceResult,
    RandomPlan,
    monte_carlo_rank_compress,
    nullspace,
    nullspace_2n,
    nullspace_minimal_vectors,
    rows_annihilate,
)
from .oracle import (
    KroneckerProfile,
    kernel_linearized,
    kronecker_indices,
    mcmillan_degree,
    rank_oracle,
)
from .orderbasis import SigmaBasis, select_low_rows, sigma_basis
from .polymat import (
    PolyMatrix,
    Shift,
    const_kernel,
    const_random,
    const_rank,
    hstack,
    is_row_reduced,
    leading_row_matrix,
    pm_eval,
    pm_mul,
    pm_mul_mod,
    pm_random,
    pm_shift_var,
    tdeg_row,
    vstack,
)
from .series import SeriesMatrix, left_quotient_series, series_inverse

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME",
    "NEG_INF",
    "DimensionMismatch",
    "Fail",
    "FieldElement",
    "FieldSpec",
    "FieldTooSmall",
    "IndependenceLost",
    "KappaMismatch",
    "KroneckerProfile",
    "MatrixParseError",
    "MinimalVectorsResult",
    "ModulusMismatch",
    "NotRowReduced",
    "Nullspace2nResult",
    "NullspaceResult",
    "Poly",
    "PolyMatrix",
    "PolynullError",
    "RandomPlan",
    "RankCandidateWrong",
    "SeriesMatrix",
    "Shift",
    "SigmaBasis",
    "SingularAtZero",
    "SingularMatrix",
    "TooLarge",
    "const_kernel",
    "const_random",
    "const_rank",
    "hstack",
    "is_row_reduced",
    "kernel_linearized",
    "kronecker_indices",
    "leading_row_matrix",
    "left_quotient_series",
    "mcmillan_degree",
    "monte_carlo_rank_compress",
    "nullspace",
    "nullspace_2n",
    "nullspace_minimal_vectors",
    "pm_eval",
    "pm_mul",
    "pm_mul_mod",
    "pm_random",
    "pm_shift_var",
    "rank_oracle",
    "rows_annihilate",
    "select_low_rows",
    "series_inverse",
    "sigma_basis",
    "tdeg_row",
    "vstack",
]
