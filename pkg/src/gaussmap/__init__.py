"""Exact higher Gaussian maps and second fundamental form data on
hyperelliptic curves.

Everything is computed in exact rational arithmetic: kernels and ranks of
the higher Gaussian maps of the canonical bundle (two independent routes),
local jet expansions at a Weierstrass point, and licensed evaluations of
the second fundamental form pairing on higher Schiffer variations.
"""

from .curve import (
    Curve,
    LocalFrameExpansion,
    canonical_derivatives,
    curve_from_json,
    default_curve,
    expand_canonical,
    expand_omega,
    new_curve,
    omega_derivatives,
    random_curve,
    x_derivatives,
    x_of_z,
)
from .errors import (
    BeyondThreshold,
    DuplicateBranchPoint,
    FirstBranchPointNotZero,
    GaussmapError,
    IndexOutOfRange,
    InvalidIndex,
    NoWitnessFound,
    NotInKernel,
    NotInPreviousKernel,
    ThresholdNotExtended,
    TooFewBranchPoints,
)
from .gaussian import (
    EquationSystem,
    FactorizationCheck,
    KernelChain,
    KernelLevel,
    OddMapResult,
    RankRow,
    RankTable,
    b_support_check,
    factorization_check,
    is_in_kernel,
    kernel_dimension_formula,
    kernel_equations,
    kernel_via_equations,
    kernel_via_polynomial_oracle,
    max_level,
    mu_eval_polynomial,
    odd_kernel_and_rank,
    oracle_residuals,
    rank_formula,
    rank_table,
    wronskian_rank_oracle,
)
from .linalg import RatMatrix, kernel_basis, matrix_rank, rref
from .poly import Poly, falling, poly_derivative
from .quadrics import (
    QuadricI2,
    basis_quadric,
    combine,
    quadric_from_a,
    quadric_from_vector,
    quadric_space_dimension,
    sym_pairs,
    wedge_pairs,
)
from .rationals import Rational, rat_from_string, rat_to_string
from .series import TruncatedSeries

__version__ = "0.1.0"

from .reports import (  # noqa: E402  (needs __version__ above)
    CheckItem,
    RunConfig,
    VerificationReport,
    canonical_json_bytes,
    rank_table_csv,
)
from .rho import (  # noqa: E402
    AsymptoticCertificate,
    CupRank,
    DerivativePairing,
    DiagonalResult,
    Functional,
    HyperplaneResult,
    IsotropyResult,
    Mu2CrossCheck,
    RhoValue,
    SchifferIndex,
    ThresholdInfo,
    asymptotic_classify,
    cup_rank,
    derivative_sum,
    diagonal_functional,
    direction_length,
    isotropy_suite,
    mu2_cross_check,
    pairing_reduction,
    pairing_table,
    rho_pair,
    rho_reduction_vector,
    threshold_with_policy,
    vanishing_threshold,
    witness_functional,
    witness_hyperplane,
)
from .suites import THEOREM_IDS, curve_panel, scan_report, verify_theorem  # noqa: E402
