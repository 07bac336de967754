"""Eye- and skin-safety limits on laser transmit power.

Single-mode and multimode Gaussian sources, lenses, emitter arrays and
diffusers are reduced to a maximum permissible transmit power against the
exposure-limit tables for 700 nm - 100 um. All quantities are SI.
"""
from .errors import (
    BeamsafeError,
    BracketError,
    ConfigError,
    FocalSingularityError,
    NonConvergenceError,
    NumericsError,
    ParameterError,
    UnsupportedDomainError,
)
from .gaussian_beam import BeamParams, ComplexBeamParameter
from .limits import ExposureContext, MpeResult, eye_mpe, skin_mpe
from .modes import Family, ModeCombination, ModeIndex
from .numerics import QuadratureSpec
from .presets import PRESETS, get_preset
from .safety import (
    ArraySpec,
    Method,
    SafetyResult,
    ShieldContext,
    ptmax_array,
    ptmax_lambertian_diffuser,
    ptmax_multimode_decomposition,
    ptmax_multimode_msquared,
    ptmax_single_mode,
    ptmax_skin_gaussian,
    ptmax_skin_multimode,
    ptmax_uniform_diffuser,
    ptmax_with_lens,
)

__version__ = "0.1.0"
