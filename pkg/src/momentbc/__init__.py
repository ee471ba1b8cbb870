"""Truncated complex moment problem solver built on discrete boundary-control
dynamics: moments -> response vector -> admissibility -> Jacobi block ->
factorization -> spectral data -> discrete measure, with forward simulation
as the independent oracle for every stage."""

__version__ = "0.1.0"

from .jacobi import FiniteJacobiMatrix, JacobiSpec, random_spec, truncate, validate
from .dynamics import (
    Control,
    GoursatKernel,
    WaveField,
    apply_response,
    auxiliary_response,
    convolve,
    goursat_kernel,
    response_vector,
    simulate_finite,
    simulate_semi_infinite,
    solution_via_kernel,
)
from .operators import (
    AdmissibilityVerdict,
    check_admissibility,
    connecting_from_gram,
    connecting_from_response,
    control_matrix,
)
from .takagi import TakagiFactorization, enforce_distinct, takagi_factorize
from .spectral import (
    DiscreteMeasure,
    SpectralData,
    build_measure,
    chebyshev_like,
    measure_moment,
    spectral_data,
    spectral_response,
)
from .moments import (
    exchange_matrix,
    hankel,
    lambda_matrix,
    moments_to_response,
    response_to_moments,
    verify_factorization,
)
from .pipeline import (
    RecoveryResult,
    ScanReport,
    SolveReport,
    convergence_scan,
    recover_coefficients,
    solve_truncated,
    verify_measure,
)

__all__ = [
    "__version__",
    "AdmissibilityVerdict",
    "Control",
    "DiscreteMeasure",
    "FiniteJacobiMatrix",
    "GoursatKernel",
    "JacobiSpec",
    "RecoveryResult",
    "ScanReport",
    "SolveReport",
    "SpectralData",
    "TakagiFactorization",
    "WaveField",
    "apply_response",
    "auxiliary_response",
    "build_measure",
    "chebyshev_like",
    "check_admissibility",
    "connecting_from_gram",
    "connecting_from_response",
    "control_matrix",
    "convergence_scan",
    "convolve",
    "enforce_distinct",
    "exchange_matrix",
    "goursat_kernel",
    "hankel",
    "lambda_matrix",
    "measure_moment",
    "moments_to_response",
    "random_spec",
    "recover_coefficients",
    "response_to_moments",
    "response_vector",
    "simulate_finite",
    "simulate_semi_infinite",
    "solution_via_kernel",
    "solve_truncated",
    "spectral_data",
    "spectral_response",
    "takagi_factorize",
    "truncate",
    "validate",
    "verify_factorization",
    "verify_measure",
]
