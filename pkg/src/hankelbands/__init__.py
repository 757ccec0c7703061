"""Band structure of periodic Hankel operators.

Fiber matrices of dilation-periodic Hankel operators, band-branch sweeps
over the dual period cell, secular determinants with their elliptic
identities, and the Mathieu-Hankel parameter study.
"""

from .errors import ConfigError, DomainError, ToleranceError, TrackingError
from .special import beta, log_gamma, ref_elliptic
from .symbol import (
    PeriodicSymbol,
    ModifiedCoefficients,
    carleman_symbol,
    double_period,
    evaluate_symbol,
    from_s_coefficients,
    laplace_kernel_residual,
    load_symbol,
    to_s_coefficients,
)
from .fiber import (
    FiberMatrix,
    build_atomic_fiber,
    build_fiber,
    build_fiber_factorized,
    choose_truncation,
    gronwall_derivative_check,
)
from .linalg import EigenDecomposition, complex_det_lu, hermitian_eigh
from .bands import (
    BandBranch,
    SpectralBand,
    band_interval,
    carleman_oracle,
    check_alternation,
    check_disjointness,
    classify_flat,
    crossing_analysis,
    gronwall_envelope_check,
    local_branches,
    period_doubling_check,
    sweep,
)
from .secdet import (
    AffineDetCoefficients,
    check_identities,
    det_from_eigenvalues,
    fit_affine_in_P,
    flat_factor,
    secular_det,
    zero_consistency,
)
from .mathieu import (
    MathieuParams,
    build_mathieu_fiber,
    check_A_reflection,
    check_gap_openness,
    check_sign_counts,
    check_small_A_monotonicity,
    find_flat_A,
    mathieu_symbol,
    sweep_A,
)

__version__ = "0.1.0"
