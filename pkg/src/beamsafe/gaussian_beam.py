"""Ideal single-transverse-mode Gaussian beam propagation.

Everything is SI: metres, watts, radians. The beam waist sits at z = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "BeamParams",
    "ComplexBeamParameter",
    "FLAT_WAVEFRONT",
    "ENCIRCLED_86",
    "spot_radius",
    "curvature_radius",
    "q_parameter",
    "divergence_angle",
    "paraxial_divergence",
    "gaussian_irradiance",
    "power_through_centered_aperture",
    "d86_distance",
    "d86_distance_exact",
]

# Fraction used by the d86 step of the single-mode algorithm. Deliberately
# 0.86, not 1 - exp(-2) = 0.8647; the two differ by ~0.5 %.
ENCIRCLED_86 = 0.86


@dataclass(frozen=True)
class BeamParams:
    wavelength: float
    waist_radius: float

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ParameterError(f"wavelength must be > 0, got {self.wavelength}")
        if not self.waist_radius > 0:
            raise ParameterError(f"waist_radius must be > 0, got {self.waist_radius}")

    @property
    def rayleigh_range(self) -> float:
        return math.pi * self.waist_radius**2 / self.wavelength


@dataclass(frozen=True)
class ComplexBeamParameter:
    """q = z + j*z0, stored as two reals."""

    real_part: float
    imag_part: float

    def __post_init__(self):
        if not self.imag_part > 0:
            raise ParameterError("imaginary part of q must be > 0")

    @classmethod
    def from_complex(cls, q: complex) -> "ComplexBeamParameter":
        return cls(q.real, q.imag)

    def __complex__(self):
        return complex(self.real_part, self.imag_part)

    def waist_radius(self, wavelength: float) -> float:
        """Radius of the waist this q belongs to."""
        return math.sqrt(wavelength * self.imag_part / math.pi)

    def spot_radius(self, wavelength: float) -> float:
        """Spot radius at the plane where q is evaluated."""
        inv = 1.0 / complex(self)
        return math.sqrt(-wavelength / (math.pi * inv.imag))

    def distance_from_waist(self) -> float:
        return self.real_part


class _FlatWavefront:
    """Sentinel returned by :func:`curvature_radius` at the waist."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FLAT_WAVEFRONT"

    def __reduce__(self):
        return (_FlatWavefront, ())


FLAT_WAVEFRONT = _FlatWavefront()


def spot_radius(beam: BeamParams, z):
    """1/e^2 intensity radius W(z). Even in z; works on arrays."""
    z = np.asarray(z, dtype=float)
    w = beam.waist_radius * np.sqrt(1.0 + (z / beam.rayleigh_range) ** 2)
    return float(w) if w.ndim == 0 else w


def curvature_radius(beam: BeamParams, z: float):
    """Wavefront radius R(z); returns ``FLAT_WAVEFRONT`` at z = 0."""
    if z == 0:
        return FLAT_WAVEFRONT
    z0 = beam.rayleigh_range
    return z * (1.0 + (z0 / z) ** 2)


def q_parameter(beam: BeamParams, z: float) -> ComplexBeamParameter:
    return ComplexBeamParameter(float(z), beam.rayleigh_range)


def paraxial_divergence(beam: BeamParams) -> float:
    """Half-angle far-field divergence lambda / (pi w0)."""
    return beam.wavelength / (math.pi * beam.waist_radius)


def divergence_angle(beam: BeamParams) -> float:
    """Exact half-angle divergence, the z -> inf limit of atan(W(z)/z)."""
    return math.atan(paraxial_divergence(beam))


def gaussian_irradiance(beam: BeamParams, power: float, r, z):
    """I(r, z) = 2P/(pi W^2) exp(-2 r^2 / W^2)."""
    w = spot_radius(beam, z)
    r = np.asarray(r, dtype=float)
    return 2.0 * power / (math.pi * w**2) * np.exp(-2.0 * r**2 / w**2)


def power_through_centered_aperture(beam: BeamParams, power: float, r0: float, z: float) -> float:
    """Power of a Gaussian beam passing a coaxial circular aperture of radius r0."""
    if power < 0:
        raise ParameterError("power must be >= 0")
    if r0 < 0:
        raise ParameterError("aperture radius must be >= 0")
    w = spot_radius(beam, z)
    return power * -math.expm1(-2.0 * r0**2 / w**2)


def d86_distance(beam: BeamParams, r_p: float) -> float:
    """Distance at which 86 % of the power fits through a radius-r_p pupil.

    Uses the far-field spot radius, as in the single-mode algorithm.
    """
    if not r_p > 0:
        raise ParameterError("pupil radius must be > 0")
    return (math.pi * beam.waist_radius / beam.wavelength) * math.sqrt(
        -2.0 * r_p**2 / math.log(1.0 - ENCIRCLED_86)
    )


def d86_distance_exact(beam: BeamParams, r_p: float) -> float:
    """Exact inverse of the full W(z) aperture-power relation at 86 %.

    Agrees with :func:`d86_distance` to O((z0/d86)^2).
    """
    if not r_p > 0:
        raise ParameterError("pupil radius must be > 0")
    w86_sq = -2.0 * r_p**2 / math.log(1.0 - ENCIRCLED_86)
    ratio = w86_sq / beam.waist_radius**2
    if ratio <= 1.0:
        return 0.0
    return beam.rayleigh_range * math.sqrt(ratio - 1.0)
