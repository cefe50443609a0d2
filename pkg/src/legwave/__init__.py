"""Legendre (spherical harmonic) wavelets."""
from .analysis import (
    OrthogonalityReport,
    ReconstructionReport,
    halfband_deviation,
    ode_residual,
    orthogonality_defect,
    roundtrip_error,
)
from .cascade import (
    DyadicGridFunction,
    cascade_scaling,
    cascade_wavelet,
    convergence_profile,
    exact_dyadic_values,
)
from .errors import (
    DomainError,
    EigenFailure,
    InvalidOrder,
    LengthError,
    OverflowRisk,
    ResourceLimit,
    ShapeMismatch,
    UnsupportedBoundary,
)
from .filterbank import (
    FilterBank,
    FrequencySamples,
    closed_form_magnitude,
    count_passband_zeros,
    filter_bank,
    freq_response,
    highpass_coeffs,
    lowpass_coeffs,
    lowpass_exact,
    phase_linearity_residual,
)
from .legendre import LegendreOrder, TrigCoeffs, eval_legendre, eval_via_trig, trig_expansion_coeffs
from .transform import (
    DecompositionResult,
    PacketTree,
    Subbands2D,
    dwt1d,
    dwt2d,
    idwt1d,
    idwt2d,
    wp_decompose,
    wp_functions,
)

__version__ = "0.1.0"
