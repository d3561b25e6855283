"""Continuous wavelet transforms of distribution-like inputs and numerical
verification of their moment asymptotic expansions for large and small
dilation."""

from ._kernels import available_backends, current_backend, use_backend
from .distributions import (
    BumpProfile,
    CallableProfile,
    DensityProfile,
    DistributionInput,
    GaussianProfile,
    Growth,
    MexicanHatDensityProfile,
    MomentSequence,
    PointMass,
    ShiftedProfile,
    TabulatedProfile,
    moment,
    moment_sequence,
    truncation_limit,
)
from .errors import (
    CwtMomentsError,
    DerivativeOrderError,
    EmptyWindowError,
    InsufficientDataError,
    MomentDivergenceError,
    QuadratureNonConvergence,
    ScenarioError,
    TruncationOrderError,
)
from .expansion import (
    ExpansionResult,
    expansion_large_a,
    expansion_small_a,
    large_a_expansion,
    mexican_hat_quadratic_partial_sum,
    mexican_hat_small_a_gamma_expansion,
    mexican_hat_small_a_gamma_moments,
    small_a_coefficient_comparison,
    small_a_reference,
)
from .quadrature import QuadratureSpec, integrate
from .transform import (
    TransformPoint,
    cwt_direct,
    cwt_fourier,
    fourier_moment_check,
    input_fourier,
    parseval_constant,
    wavelet_fourier,
)
from .verify import (
    OrderFitReport,
    geometric_grid,
    remainder_order_fit,
    seminorm_decay_check,
    seminorm_sup,
)
from .wavelets import (
    MEXICAN_HAT,
    MexicanHatWavelet,
    TaylorPolynomial,
    Wavelet,
    central_difference_derivative,
    eval_mexican_hat,
    mexican_hat_quadratic_coeffs,
    taylor_polynomial,
    wavelet_derivative,
)

__version__ = "0.1.0"
