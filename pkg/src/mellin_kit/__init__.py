"""Mellin-transform analysis of signals on the positive half-line.

Exponential sampling, Boas-type Mellin differentiation, and the distance of
a signal from Mellin-Bernstein spaces, with certified error bounds.
"""

from .core import (
    DEFAULT_GRID,
    Axis,
    BandLimit,
    LogUniformGrid,
    SignalFunction,
    SpaceDescriptor,
    SpectralFunction,
    translate,
    xnorm,
    zero_signal,
)
from .errors import (
    DegenerateFitError,
    DomainError,
    EvaluationDomainError,
    IncompleteDataError,
    InvalidParametersError,
    MellinKitError,
    MellinRangeError,
    NotFoundError,
    NotInDomainError,
    UnsupportedSpaceError,
    WindowTooSmallError,
)
from .kernels import lin_c, rect, sawtooth_phi, sinc
from .transform import SpectralSamples, TransformConfig, mellin_forward, mellin_inverse, roundtrip_error
from .calculus import (
    BoasConfig,
    BoasEstimate,
    ModulusQuery,
    boas_derivative,
    boas_psi,
    boas_remainder,
    derivative_spectral,
    mellin_derivative,
    mellin_difference,
    modulus,
    modulus_curve,
)
from .distance import (
    BoundReport,
    BoundSource,
    DistanceQuery,
    bernstein_check,
    bernstein_extended_check,
    dist2_euclidean_check,
    dist_q,
    lipschitz_bound,
    rate_fit,
    sobolev_bound,
)
from .sampling import (
    ReconstructionReport,
    SamplingConfig,
    exp_sampling_bound,
    exp_sampling_reconstruct,
    reproducing_kernel_apply,
    reproducing_kernel_remainder,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BandLimit",
    "BoasConfig",
    "BoasEstimate",
    "BoundReport",
    "BoundSource",
    "DEFAULT_GRID",
    "DegenerateFitError",
    "DistanceQuery",
    "DomainError",
    "EvaluationDomainError",
    "IncompleteDataError",
    "InvalidParametersError",
    "LogUniformGrid",
    "MellinKitError",
    "MellinRangeError",
    "ModulusQuery",
    "NotFoundError",
    "NotInDomainError",
    "ReconstructionReport",
    "SamplingConfig",
    "SignalFunction",
    "SpaceDescriptor",
    "SpectralFunction",
    "SpectralSamples",
    "TransformConfig",
    "UnsupportedSpaceError",
    "WindowTooSmallError",
    "bernstein_check",
    "bernstein_extended_check",
    "boas_derivative",
    "boas_psi",
    "boas_remainder",
    "derivative_spectral",
    "dist2_euclidean_check",
    "dist_q",
    "exp_sampling_bound",
    "exp_sampling_reconstruct",
    "lin_c",
    "lipschitz_bound",
    "mellin_derivative",
    "mellin_difference",
    "mellin_forward",
    "mellin_inverse",
    "modulus",
    "modulus_curve",
    "rate_fit",
    "rect",
    "reproducing_kernel_apply",
    "reproducing_kernel_remainder",
    "roundtrip_error",
    "sawtooth_phi",
    "sinc",
    "sobolev_bound",
    "translate",
    "xnorm",
    "zero_signal",
]
