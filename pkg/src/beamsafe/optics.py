"""Lenses (ABCD / complex-q) and received-power models for diffusers.

Thick-lens surface radii follow the sign convention of the matrix below:
a biconvex lens has ``front_radius < 0`` and ``back_radius > 0``, i.e. the
opposite of the usual Cartesian convention. The focal length implied by
a matrix is always ``-1 / C``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import FocalSingularityError, ParameterError
from .gaussian_beam import BeamParams, ComplexBeamParameter, paraxial_divergence

__all__ = [
    "ThickLensSpec",
    "ThinLensSpec",
    "DiffuserKind",
    "DiffuserSpec",
    "LensImage",
    "thick_lens_abcd",
    "thin_lens_abcd",
    "free_space_abcd",
    "focal_length_of",
    "transform_q",
    "thin_lens_image",
    "abcd_image",
    "lambertian_received_power",
    "uniform_received_power",
    "collimating_focal_length",
]

_SINGULAR_TOL = 1e-300


@dataclass(frozen=True)
class ThickLensSpec:
    refractive_index: float
    thickness: float
    front_radius: float
    back_radius: float

    def __post_init__(self):
        if not self.refractive_index >= 1:
            raise ParameterError("refractive index must be >= 1")
        if self.thickness < 0:
            raise ParameterError("thickness must be >= 0")
        if self.front_radius == 0 or self.back_radius == 0:
            raise ParameterError("surface radii must be non-zero")


@dataclass(frozen=True)
class ThinLensSpec:
    focal_length: float
    object_distance: float

    def __post_init__(self):
        if self.focal_length == 0:
            raise ParameterError("focal length must be non-zero")
        if self.object_distance < 0:
            raise ParameterError("object distance must be >= 0")


class DiffuserKind(str, enum.Enum):
    LAMBERTIAN = "lambertian"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class DiffuserSpec:
    """Collimating lens of focal length f followed by a diffuser of diameter D.

    ``lens_to_diffuser`` is recorded for completeness; no model uses it.
    """

    kind: DiffuserKind
    diameter: float
    collimating_focal_length: float
    lambertian_order: float | None = None
    fwhm_angle: float | None = None
    lens_to_diffuser: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DiffuserKind(self.kind))
        if not self.diameter > 0:
            raise ParameterError("diffuser diameter must be > 0")
        if not self.collimating_focal_length > 0:
            raise ParameterError("collimating focal length must be > 0")
        if self.kind is DiffuserKind.LAMBERTIAN:
            if self.lambertian_order is None or not self.lambertian_order >= 1:
                raise ParameterError("Lambertian order must be >= 1")
        else:
            if self.fwhm_angle is None or not 0 < self.fwhm_angle < math.pi:
                raise ParameterError("uniform diffuser FWHM angle must lie in (0, pi)")


@dataclass(frozen=True)
class LensImage:
    """Output waist: distance after the lens (negative = virtual), radius, divergence."""

    d2: float
    w2: float
    theta2: float
    kappa: float


def thick_lens_abcd(spec: ThickLensSpec) -> np.ndarray:
    n, rho = spec.refractive_index, spec.thickness
    u1, u2 = spec.front_radius, spec.back_radius
    a = 1.0 + rho * (n - 1.0) / (n * u1)
    b = rho / n
    c = (n - 1.0) * (1.0 / u1 - 1.0 / u2) - rho * (n - 1.0) ** 2 / (n * u1 * u2)
    d = 1.0 - rho * (n - 1.0) / (n * u2)
    return np.array([[a, b], [c, d]])


def thin_lens_abcd(focal_length: float) -> np.ndarray:
    if focal_length == 0:
        raise ParameterError("focal length must be non-zero")
    return np.array([[1.0, 0.0], [-1.0 / focal_length, 1.0]])


def free_space_abcd(distance: float) -> np.ndarray:
    return np.array([[1.0, distance], [0.0, 1.0]])


def focal_length_of(matrix) -> float:
    """Effective focal length -1/C; infinite for an afocal system."""
    c = float(np.asarray(matrix)[1, 0])
    return math.inf if c == 0 else -1.0 / c


def transform_q(matrix, q_in: ComplexBeamParameter) -> ComplexBeamParameter:
    """q_out = (A q + B) / (C q + D).

    Raises
    ------
    FocalSingularityError
        If C q + D vanishes.
    """
    (a, b), (c, d) = np.asarray(matrix, dtype=float)
    q = complex(q_in)
    den = c * q + d
    if abs(den) <= _SINGULAR_TOL:
        raise FocalSingularityError("C*q + D is zero")
    out = (a * q + b) / den
    if not out.imag > 0:
        raise FocalSingularityError(f"transformed q has non-positive imaginary part {out.imag!r}")
    return ComplexBeamParameter.from_complex(out)


def thin_lens_image(beam: BeamParams, lens: ThinLensSpec) -> LensImage:
    """Waist position and size behind a thin lens, from the closed-form imaging relations."""
    f, d1 = lens.focal_length, lens.object_distance
    lam, w0 = beam.wavelength, beam.waist_radius
    g = lam / (math.pi * w0**2)
    s = 1.0 - d1 / f
    d2 = (1.0 / f - s * d1 * g**2) / (1.0 / f**2 + s**2 * g**2)
    w2 = lam * abs(f) / (math.pi * w0 * math.sqrt(1.0 + s**2 * (f * g) ** 2))
    kappa = w2 / w0
    return LensImage(d2, w2, paraxial_divergence(beam) / kappa, kappa)


def abcd_image(beam: BeamParams, matrix, object_distance: float) -> LensImage:
    """Output waist of a general ABCD element placed ``object_distance`` after the waist."""
    q_out = transform_q(matrix, ComplexBeamParameter(object_distance, beam.rayleigh_range))
    d2 = -q_out.real_part
    w2 = q_out.waist_radius(beam.wavelength)
    kappa = w2 / beam.waist_radius
    return LensImage(d2, w2, paraxial_divergence(beam) / kappa, kappa)


def lambertian_received_power(P_t: float, m: float, psi_c: float) -> float:
    """Power of a generalised Lambertian emitter of order m inside half-angle psi_c."""
    if not 0 <= psi_c <= math.pi / 2:
        raise ParameterError("psi_c must lie in [0, pi/2]")
    if not m >= 1:
        raise ParameterError("Lambertian order must be >= 1")
    cos_psi = math.cos(psi_c)
    if cos_psi <= 0:
        return P_t
    return P_t * -math.expm1((m + 1.0) * math.log(cos_psi))


def _one_minus_cos(x):
    return 2.0 * math.sin(0.5 * x) ** 2


def uniform_received_power(P_t: float, theta_d: float, psi_c: float) -> float:
    """Power of a uniform cone of full angle theta_d inside half-angle psi_c.

    Capped at ``P_t`` once the receiving cone covers the whole emission cone.
    """
    if not theta_d > 0:
        raise ParameterError("theta_d must be > 0")
    if psi_c < 0:
        raise ParameterError("psi_c must be >= 0")
    frac = _one_minus_cos(psi_c) / _one_minus_cos(0.5 * theta_d)
    return P_t * min(1.0, frac)


def collimating_focal_length(diameter: float, theta: float) -> float:
    """Focal length that spreads a beam of half-angle theta over a diameter D: D / (2 tan theta)."""
    if not diameter > 0 or not 0 < theta < math.pi / 2:
        raise ParameterError("need diameter > 0 and 0 < theta < pi/2")
    return diameter / (2.0 * math.tan(theta))
