import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from beamsafe.errors import ParameterError
from beamsafe.gaussian_beam import (
    ENCIRCLED_86,
    FLAT_WAVEFRONT,
    BeamParams,
    curvature_radius,
    d86_distance,
    d86_distance_exact,
    divergence_angle,
    gaussian_irradiance,
    paraxial_divergence,
    power_through_centered_aperture,
    q_parameter,
    spot_radius,
)

wavelengths = st.floats(400e-9, 2000e-9)
waists = st.floats(1e-6, 1e-3)
distances = st.floats(0.0, 10.0)


def test_rayleigh_range_and_spot_at_z0():
    b = BeamParams(850e-9, 5e-6)
    z0 = math.pi * 25e-12 / 850e-9
    assert b.rayleigh_range == pytest.approx(z0, rel=1e-15)
    assert spot_radius(b, z0) == pytest.approx(5e-6 * math.sqrt(2), rel=1e-14)


def test_waist_has_flat_wavefront():
    assert curvature_radius(BeamParams(850e-9, 5e-6), 0.0) is FLAT_WAVEFRONT


@pytest.mark.parametrize("bad", [(0, 5e-6), (850e-9, 0), (-1, 1), (850e-9, -1e-6)])
def test_invalid_beam_rejected(bad):
    with pytest.raises(ParameterError):
        BeamParams(*bad)


@given(wavelengths, waists, distances)
def test_q_parameter_consistent_with_spot_radius(lam, w0, z):
    b = BeamParams(lam, w0)
    q = q_parameter(b, z)
    assert q.spot_radius(lam) == pytest.approx(spot_radius(b, z), rel=1e-12)
    assert q.waist_radius(lam) == pytest.approx(w0, rel=1e-12)


@given(wavelengths, waists, st.floats(1e-6, 10.0))
def test_q_curvature_matches_radius(lam, w0, z):
    b = BeamParams(lam, w0)
    inv = 1.0 / complex(q_parameter(b, z))
    assert 1.0 / inv.real == pytest.approx(curvature_radius(b, z), rel=1e-12)


@given(wavelengths, waists, distances)
def test_spot_radius_not_below_waist(lam, w0, z):
    assert spot_radius(BeamParams(lam, w0), z) >= w0


@given(wavelengths, waists)
def test_divergence_paraxial_limit(lam, w0):
    b = BeamParams(lam, w0)
    th = paraxial_divergence(b)
    assert th == pytest.approx(lam / (math.pi * w0), rel=1e-15)
    assert divergence_angle(b) == pytest.approx(math.atan(th), rel=1e-12)


def test_irradiance_integrates_to_power():
    b = BeamParams(850e-9, 5e-6)
    z = 0.05
    w = spot_radius(b, z)
    r = np.linspace(0, 6 * w, 20001)
    I = gaussian_irradiance(b, 2.0, r, z)
    total = np.trapezoid(2 * math.pi * r * I, r) if hasattr(np, "trapezoid") else np.trapz(2 * math.pi * r * I, r)
    assert total == pytest.approx(2.0, rel=1e-6)


def test_encircled_fraction_at_spot_radius():
    b = BeamParams(850e-9, 5e-6)
    z = 0.1
    frac = power_through_centered_aperture(b, 1.0, spot_radius(b, z), z)
    assert abs(frac - (-math.expm1(-2.0))) <= 1e-12


@given(wavelengths, st.floats(1e-6, 1e-4))
def test_d86_exact_inverts_aperture_power(lam, w0):
    b = BeamParams(lam, w0)
    z = d86_distance_exact(b, 3.5e-3)
    if z > 0:
        frac = power_through_centered_aperture(b, 1.0, 3.5e-3, z)
        assert frac == pytest.approx(ENCIRCLED_86, rel=1e-9)


@pytest.mark.parametrize("w0", [2e-6, 5e-6, 10e-6])
def test_d86_printed_agrees_with_exact(w0):
    b = BeamParams(850e-9, w0)
    assert d86_distance(b, 3.5e-3) == pytest.approx(d86_distance_exact(b, 3.5e-3), rel=1e-5)


@pytest.mark.parametrize("w0", [5e-6, 20e-6, 50e-6])
def test_d86_gap_is_second_order(w0):
    b = BeamParams(850e-9, w0)
    exact = d86_distance_exact(b, 3.5e-3)
    gap = d86_distance(b, 3.5e-3) / exact - 1.0
    assert gap == pytest.approx(0.5 * (b.rayleigh_range / exact) ** 2, rel=1e-2)
