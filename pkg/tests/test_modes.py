import math
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from beamsafe.errors import ParameterError
from beamsafe.gaussian_beam import BeamParams, spot_radius
from beamsafe.modes import (
    Family,
    ModeCombination,
    ModeIndex,
    combination_divergence_ratio,
    combination_irradiance,
    combination_radial_irradiance,
    combination_spot_radius,
    embedded_gaussian,
    hermite_polynomial,
    irradiance_gradient,
    laguerre_polynomial,
    mode_irradiance,
    mode_spot_radius,
    peak_irradiance_location,
    power_through_disk,
)
from beamsafe.presets import PRESETS, get_preset

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from oracles import dense_grid_argmax  # noqa: E402

BEAM = BeamParams(850e-9, 5e-6)


@pytest.mark.parametrize("l", range(0, 12))
def test_hermite_matches_scipy(l):
    u = np.linspace(-4, 4, 41)
    np.testing.assert_allclose(hermite_polynomial(l, u), special.eval_hermite(l, u), rtol=1e-12, atol=1e-9)


@pytest.mark.parametrize("l,m", [(0, 0), (1, 0), (3, 2), (5, 4), (2, 6)])
def test_laguerre_matches_scipy(l, m):
    x = np.linspace(0, 10, 41)
    np.testing.assert_allclose(laguerre_polynomial(l, m, x), special.eval_genlaguerre(m, l, x), rtol=1e-12, atol=1e-9)


def test_index_cap():
    with pytest.raises(ParameterError):
        hermite_polynomial(31, 0.0)


def test_pmn():
    assert ModeIndex("HG", 2, 3).pmn == 6
    assert ModeIndex("LG", 2, 3).pmn == 9


def test_combination_validation():
    with pytest.raises(ParameterError):
        ModeCombination.from_pairs("LG", [((0, 0), 0.5), ((1, 0), 0.4)])
    with pytest.raises(ParameterError):
        ModeCombination(((ModeIndex("LG", 0, 0), 0.5), (ModeIndex("HG", 1, 0), 0.5)))
    with pytest.raises(ParameterError):
        ModeCombination.from_pairs("LG", [((0, 0), 1.2), ((1, 0), -0.2)])


def test_lg00_equals_gaussian():
    z = 0.1
    w = spot_radius(BEAM, z)
    r = np.linspace(0, 3 * w, 7)
    got = mode_irradiance(ModeIndex("LG", 0, 0), BEAM, r, 0 * r, z)
    np.testing.assert_allclose(got, 2 / (math.pi * w * w) * np.exp(-2 * r**2 / w**2), rtol=1e-13)
    got_hg = mode_irradiance(ModeIndex("HG", 0, 0), BEAM, r, 0 * r, z)
    np.testing.assert_allclose(got_hg, got, rtol=1e-13)


def test_gradient_matches_finite_difference():
    combo = ModeCombination.from_pairs("HG", [((1, 0), 0.4), ((0, 2), 0.6)])
    z = 1e-3
    w = spot_radius(BEAM, z)
    x, y, h = 0.3 * w, -0.7 * w, 1e-6 * w
    gx, gy = irradiance_gradient(combo, BEAM, x, y, z)
    fx = (combination_irradiance(combo, BEAM, x + h, y, z) - combination_irradiance(combo, BEAM, x - h, y, z)) / (2 * h)
    fy = (combination_irradiance(combo, BEAM, x, y + h, z) - combination_irradiance(combo, BEAM, x, y - h, z)) / (2 * h)
    assert gx == pytest.approx(fx, rel=1e-6)
    assert gy == pytest.approx(fy, rel=1e-6)


def test_radial_profile_matches_planar():
    combo = get_preset("LG-Comb 4").combination
    z = 0.1
    w = spot_radius(BEAM, z)
    r = np.linspace(0, 3 * w, 9)
    np.testing.assert_allclose(
        combination_radial_irradiance(combo, BEAM, r, z), combination_irradiance(combo, BEAM, r / math.sqrt(2), r / math.sqrt(2), z), rtol=1e-12
    )


hg_pairs = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.floats(0.05, 1.0)), min_size=1, max_size=3, unique_by=lambda t: t[:2]
)


def _normalise(entries):
    s = sum(c for *_, c in entries)
    return [((l, m), c / s) for l, m, c in entries]


@settings(max_examples=15)
@given(hg_pairs)
def test_hg_peak_beats_dense_grid(entries):
    combo = ModeCombination.from_pairs("HG", _normalise(entries))
    z = 0.1
    w = spot_radius(BEAM, z)
    pk = peak_irradiance_location(combo, BEAM, z)
    f = lambda x, y: combination_irradiance(combo, BEAM, x, y, z)
    gx, gy, _ = dense_grid_argmax(f, 4 * max(mode_spot_radius(m, BEAM, z) for m in combo.modes), n=801)
    assert pk.irradiance >= f(gx, gy) * (1 - 1e-9)
    assert pk.relative_residual < 1e-6


@pytest.mark.parametrize("name", list(PRESETS))
def test_lg_peak_beats_radial_grid(name):
    combo = PRESETS[name].combination
    z = 0.1
    w = spot_radius(BEAM, z)
    pk = peak_irradiance_location(combo, BEAM, z)
    r = np.linspace(0, 5 * w, 20001)
    assert pk.irradiance >= combination_radial_irradiance(combo, BEAM, r, z).max() * (1 - 1e-12)


def test_peak_is_deterministic():
    combo = ModeCombination.from_pairs("HG", [((2, 1), 0.7), ((0, 0), 0.3)])
    assert peak_irradiance_location(combo, BEAM, 0.1) == peak_irradiance_location(combo, BEAM, 0.1)


def test_disk_power_pure_gaussian_closed_form():
    combo = ModeCombination.single(ModeIndex("LG", 0, 0))
    z = 0.1
    w = spot_radius(BEAM, z)
    got = power_through_disk(combo, BEAM, 1.0, (0, 0), 3.5e-3, z)
    assert abs(got - (-math.expm1(-2 * 3.5e-3**2 / w**2))) <= 1e-9


@pytest.mark.parametrize("family", ["HG", "LG"])
def test_disk_power_large_aperture_is_total(family):
    combo = ModeCombination.from_pairs(family, [((1, 1), 0.5), ((2, 0), 0.5)])
    z = 0.1
    w = spot_radius(BEAM, z)
    assert power_through_disk(combo, BEAM, 2.0, (0.1 * w, 0.2 * w), 12 * w, z) == pytest.approx(2.0, rel=1e-9)


def test_tem00_spot_radius_is_w():
    z = 0.1
    assert mode_spot_radius(ModeIndex("LG", 0, 0), BEAM, z) == pytest.approx(spot_radius(BEAM, z), rel=1e-9)


def test_divergence_ratio_of_pure_gaussian():
    combo = ModeCombination.single(ModeIndex("HG", 0, 0))
    assert combination_divergence_ratio(combo, BEAM) == pytest.approx(1.0, rel=1e-3)


def test_combination_spot_radius_between_extremes():
    combo = get_preset("LG-Comb 5").combination
    z = 0.1
    r = combination_spot_radius(combo, BEAM, z)
    assert spot_radius(BEAM, z) <= r <= max(mode_spot_radius(m, BEAM, z) for m in combo.modes)


def test_embedded_gaussian():
    e = embedded_gaussian(0.1, 850e-9, w0_R=5e-6)
    assert e.w0_em == pytest.approx(850e-9 / (math.pi * 0.1))
    assert e.m_squared == pytest.approx(math.pi * 5e-6 * 0.1 / 850e-9)
    assert embedded_gaussian(0.1, 850e-9).m_squared is None


def test_preset_lookup():
    assert get_preset("lg-comb 3").name == "LG-Comb 3"
    assert get_preset("LG-Comb 1").combination.family is Family.LG
