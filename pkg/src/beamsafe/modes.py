"""Hermite-Gaussian and Laguerre-Gaussian transverse modes.

Mode irradiances are normalised to unit power: the integral of
``mode_irradiance`` over the transverse plane is 1, so multiplying by
``coefficient * P_t`` gives W/m^2. Multimode beams are incoherent sums.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import optimize

from .errors import ParameterError
from .gaussian_beam import BeamParams, paraxial_divergence, spot_radius
from .numerics import (
    QuadratureSpec,
    find_root_bracketed,
    golden_section_max,
    integrate_rectangle,
)

__all__ = [
    "Family",
    "ModeIndex",
    "ModeCombination",
    "EmbeddedGaussian",
    "PeakLocation",
    "MAX_MODE_INDEX",
    "FAR_FIELD_RAYLEIGH_MULTIPLE",
    "hermite_polynomial",
    "laguerre_polynomial",
    "mode_irradiance",
    "combination_irradiance",
    "combination_radial_irradiance",
    "irradiance_gradient",
    "peak_irradiance_location",
    "power_through_disk",
    "mode_spot_radius",
    "combination_spot_radius",
    "combination_divergence_ratio",
    "embedded_gaussian",
]

MAX_MODE_INDEX = 30
# divergence is measured at z = 100 z0, where W(z)/z is within 5e-5 of theta
FAR_FIELD_RAYLEIGH_MULTIPLE = 100.0
_COEFF_SUM_TOL = 1e-9
_E2 = math.exp(-2.0)


class Family(str, enum.Enum):
    HG = "HermiteGaussian"
    LG = "LaguerreGaussian"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key in ("hg", "hermite", "hermitegaussian", "hermite-gaussian"):
            return cls.HG
        if key in ("lg", "laguerre", "laguerregaussian", "laguerre-gaussian"):
            return cls.LG
        raise ParameterError(f"unknown mode family {value!r}")


@dataclass(frozen=True, order=True)
class ModeIndex:
    family: Family
    l: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        for name in ("l", "m"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ParameterError(f"mode index {name} must be a non-negative integer, got {v}")
            object.__setattr__(self, name, int(v))

    @property
    def pmn(self) -> int:
        """Principal mode number."""
        if self.family is Family.HG:
            return self.l + self.m + 1
        return self.l + 2 * self.m + 1

    def __str__(self):
        tag = "HG" if self.family is Family.HG else "LG"
        return f"{tag}({self.l},{self.m})"


@dataclass(frozen=True)
class ModeCombination:
    """Incoherent mix of modes of one family; coefficients are power fractions."""

    entries: tuple

    def __post_init__(self):
        entries = tuple((mode, float(c)) for mode, c in self.entries)
        if not entries:
            raise ParameterError("mode combination is empty")
        families = {mode.family for mode, _ in entries}
        if len(families) != 1:
            raise ParameterError("all modes in a combination must share one family")
        if any(c < 0 for _, c in entries):
            raise ParameterError("mode coefficients must be >= 0")
        total = math.fsum(c for _, c in entries)
        if abs(total - 1.0) > _COEFF_SUM_TOL:
            # refusing to renormalise: a bad sum usually means a typo upstream
            raise ParameterError(f"mode coefficients sum to {total!r}, expected 1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_pairs(cls, family, pairs: Iterable) -> "ModeCombination":
        """Build from ``[((l, m), coefficient), ...]``, dropping zero weights."""
        fam = Family.parse(family)
        entries = [(ModeIndex(fam, l, m), c) for (l, m), c in pairs if c != 0]
        return cls(tuple(entries))

    @classmethod
    def single(cls, mode: ModeIndex) -> "ModeCombination":
        return cls(((mode, 1.0),))

    @property
    def family(self) -> Family:
        return self.entries[0][0].family

    @property
    def modes(self):
        return [mode for mode, _ in self.entries]


@dataclass(frozen=True)
class EmbeddedGaussian:
    theta_em: float
    w0_em: float
    m_squared: float | None = None


@dataclass(frozen=True)
class PeakLocation:
    """Peak of a combination profile plus stationarity diagnostics.

    ``residual`` is the gradient magnitude at the returned point and
    ``max_gradient`` the largest gradient magnitude seen during the scan.
    """

    x: float
    y: float
    irradiance: float
    residual: float
    max_gradient: float

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def relative_residual(self) -> float:
        if self.max_gradient == 0:
            return 0.0
        return self.residual / self.max_gradient


# --------------------------------------------------------------------------
# polynomials


def _check_index(n, cap, name):
    if int(n) != n or n < 0:
        raise ParameterError(f"{name} must be a non-negative integer")
    if n > cap:
        raise ParameterError(f"{name}={n} exceeds the index cap {cap}")


def hermite_polynomial(l: int, u, max_index: int = MAX_MODE_INDEX):
    """Physicists' Hermite polynomial H_l(u) by three-term recurrence."""
    _check_index(l, max_index, "l")
    u = np.asarray(u, dtype=float)
    h_prev = np.ones_like(u)
    if l == 0:
        return h_prev if u.ndim else float(h_prev)
    h = 2.0 * u
    for n in range(1, l):
        h_prev, h = h, 2.0 * u * h - 2.0 * n * h_prev
    return h if u.ndim else float(h)


def laguerre_polynomial(l: int, m: int, x, max_index: int = MAX_MODE_INDEX):
    """Generalised Laguerre polynomial L_m^l(x) by recurrence in m."""
    _check_index(l, max_index, "l")
    _check_index(m, max_index, "m")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if m == 0:
        return prev if x.ndim else float(prev)
    cur = 1.0 + l - x
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 + l - x) * cur - (k + l) * prev) / (k + 1)
    return cur if x.ndim else float(cur)


def _hg_norm(l, m):
    # A_{l,m}^2 = 2^(1-l-m) / (pi l! m!)
    return math.exp((1 - l - m) * math.log(2.0) - math.lgamma(l + 1) - math.lgamma(m + 1)) / math.pi


def _lg_norm(l, m):
    # A_{l,m}^2 = 2 m! / (pi (m+l)!)
    return 2.0 * math.exp(math.lgamma(m + 1) - math.lgamma(m + l + 1)) / math.pi


# --------------------------------------------------------------------------
# irradiance


def _lg_radial(mode: ModeIndex, w, r):
    x = 2.0 * np.asarray(r, dtype=float) ** 2 / w**2
    lag = laguerre_polynomial(mode.l, mode.m, x)
    return _lg_norm(mode.l, mode.m) / w**2 * x**mode.l * lag**2 * np.exp(-x)


def _hg_planar(mode: ModeIndex, w, x, y):
    u = math.sqrt(2.0) * np.asarray(x, dtype=float) / w
    v = math.sqrt(2.0) * np.asarray(y, dtype=float) / w
    hu = hermite_polynomial(mode.l, u)
    hv = hermite_polynomial(mode.m, v)
    return _hg_norm(mode.l, mode.m) / w**2 * hu**2 * hv**2 * np.exp(-(u**2) - v**2)


def mode_irradiance(mode: ModeIndex, beam: BeamParams, x, y, z):
    """Unit-power irradiance |U_{l,m}|^2 [1/m^2] at Cartesian (x, y, z).

    LG modes are rotationally symmetric, so only r = hypot(x, y) matters.
    """
    w = spot_radius(beam, z)
    if mode.family is Family.HG:
        return _hg_planar(mode, w, x, y)
    return _lg_radial(mode, w, np.hypot(x, y))


def combination_irradiance(combo: ModeCombination, beam: BeamParams, x, y, z):
    """Weighted sum of unit-power mode irradiances [1/m^2]."""
    total = 0.0
    for mode, c in combo.entries:
        total = total + c * mode_irradiance(mode, beam, x, y, z)
    return total


def combination_radial_irradiance(combo: ModeCombination, beam: BeamParams, r, z):
    """Radial profile of an LG combination [1/m^2]."""
    if combo.family is not Family.LG:
        raise ParameterError("radial profile is only defined for LG combinations")
    w = spot_radius(beam, z)
    total = 0.0
    for mode, c in combo.entries:
        total = total + c * _lg_radial(mode, w, r)
    return total


def _lg_radial_derivative(combo, w, r):
    """d/dr of the LG combination profile."""
    r = np.asarray(r, dtype=float)
    x = 2.0 * r**2 / w**2
    out = np.zeros_like(x)
    for mode, c in combo.entries:
        l, m = mode.l, mode.m
        lag = laguerre_polynomial(l, m, x)
        dlag = -laguerre_polynomial(l + 1, m - 1, x, max_index=MAX_MODE_INDEX + 1) if m > 0 else 0.0
        xl = x**l
        # d/dx [x^l L^2 e^-x] = e^-x L [(l x^(l-1) - x^l) L + 2 x^l L']
        lead = l * x ** (l - 1) if l > 0 else 0.0
        dfdx = np.exp(-x) * lag * ((lead - xl) * lag + 2.0 * xl * dlag)
        out = out + c * _lg_norm(l, m) / w**2 * dfdx * (4.0 * r / w**2)
    return out


def irradiance_gradient(combo: ModeCombination, beam: BeamParams, x, y, z):
    """Analytic gradient (dI/dx, dI/dy) of the combination irradiance.

    These are the stationarity equations whose roots locate the peak.
    """
    w = spot_radius(beam, z)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if combo.family is Family.LG:
        r = np.hypot(x, y)
        dr = _lg_radial_derivative(combo, w, r)
        with np.errstate(invalid="ignore", divide="ignore"):
            cx = np.where(r > 0, x / np.where(r > 0, r, 1.0), 0.0)
            cy = np.where(r > 0, y / np.where(r > 0, r, 1.0), 0.0)
        return dr * cx, dr * cy
    s2 = math.sqrt(2.0)
    u = s2 * x / w
    v = s2 * y / w
    gx = np.zeros(np.broadcast(u, v).shape)
    gy = np.zeros_like(gx)
    eu, ev = np.exp(-(u**2)), np.exp(-(v**2))
    for mode, c in combo.entries:
        l, m = mode.l, mode.m
        hl, hm = hermite_polynomial(l, u), hermite_polynomial(m, v)
        hl1 = hermite_polynomial(l - 1, u) if l > 0 else 0.0
        hm1 = hermite_polynomial(m - 1, v) if m > 0 else 0.0
        a = c * _hg_norm(l, m) / w**2
        gx = gx + a * 2.0 * hl * eu * (2 * l * hl1 - u * hl) * hm**2 * ev * (s2 / w)
        gy = gy + a * 2.0 * hm * ev * (2 * m * hm1 - v * hm) * hl**2 * eu * (s2 / w)
    return gx, gy


# --------------------------------------------------------------------------
# spot radius / divergence


def _outer_crossing(profile, s_max, npts=4001):
    """Outermost s where profile(s) drops to 1/e^2 of its maximum."""
    s = np.linspace(0.0, s_max, npts)
    p = profile(s)
    level = float(np.max(p)) * _E2
    above = np.nonzero(p >= level)[0]
    k = int(above[-1])
    if k == npts - 1:
        raise ParameterError("profile does not decay inside the search window")
    return find_root_bracketed(lambda t: float(profile(t)) - level, float(s[k]), float(s[k + 1]), tol=1e-13)


def _s_window(pmn):
    return 4.0 + 1.5 * math.sqrt(pmn)


def mode_spot_radius(mode: ModeIndex, beam: BeamParams, z: float) -> float:
    """Radius where the mode profile falls to 1/e^2 of its peak, outside the outermost lobe.

    For HG modes the larger of the x- and y-axis radii is returned.
    """
    w = spot_radius(beam, z)
    if mode.family is Family.LG:
        s = _outer_crossing(lambda t: _lg_radial(mode, 1.0, t), _s_window(mode.pmn))
        return s * w
    sx = _outer_crossing(
        lambda t: hermite_polynomial(mode.l, math.sqrt(2.0) * np.asarray(t)) ** 2 * np.exp(-2.0 * np.asarray(t) ** 2),
        _s_window(mode.l + 1),
    )
    sy = _outer_crossing(
        lambda t: hermite_polynomial(mode.m, math.sqrt(2.0) * np.asarray(t)) ** 2 * np.exp(-2.0 * np.asarray(t) ** 2),
        _s_window(mode.m + 1),
    )
    return max(sx, sy) * w


def combination_spot_radius(combo: ModeCombination, beam: BeamParams, z: float) -> float:
    """1/e^2-of-peak radius of the combined profile.

    LG: radial profile. HG: larger of the x- and y-axis cuts through the origin.
    """
    w = spot_radius(beam, z)
    pmn = max(mode.pmn for mode in combo.modes)
    window = _s_window(pmn)
    if combo.family is Family.LG:
        s = _outer_crossing(lambda t: _combo_lg_unit(combo, t), window)
        return s * w
    sx = _outer_crossing(lambda t: _combo_hg_unit(combo, t, 0.0), window)
    sy = _outer_crossing(lambda t: _combo_hg_unit(combo, 0.0, t), window)
    return max(sx, sy) * w


def _combo_lg_unit(combo, s):
    total = 0.0
    for mode, c in combo.entries:
        total = total + c * _lg_radial(mode, 1.0, s)
    return total


def _combo_hg_unit(combo, x, y):
    total = 0.0
    for mode, c in combo.entries:
        total = total + c * _hg_planar(mode, 1.0, x, y)
    return total


def combination_divergence_ratio(combo: ModeCombination, beam: BeamParams) -> float:
    """theta_R / theta of the combination, measured in the far field."""
    z = FAR_FIELD_RAYLEIGH_MULTIPLE * beam.rayleigh_range
    theta_r = combination_spot_radius(combo, beam, z) / z
    return theta_r / paraxial_divergence(beam)


def embedded_gaussian(theta_R: float, wavelength: float, w0_R: float | None = None) -> EmbeddedGaussian:
    """Ideal Gaussian with the real beam's divergence.

    ``m_squared`` is filled in only when the real beam waist ``w0_R`` is known.
    """
    if not theta_R > 0:
        raise ParameterError("theta_R must be > 0")
    w0_em = wavelength / (math.pi * theta_R)
    m2 = None if w0_R is None else math.pi * w0_R * theta_R / wavelength
    return EmbeddedGaussian(theta_em=theta_R, w0_em=w0_em, m_squared=m2)


# --------------------------------------------------------------------------
# peak search


def _max_spot_radius(combo, beam, z):
    return max(mode_spot_radius(mode, beam, z) for mode in combo.modes)


def peak_irradiance_location(
    combo: ModeCombination,
    beam: BeamParams,
    z: float,
    grid_points: int = 201,
    resolution: float = 1e-4,
) -> PeakLocation:
    """Global maximum of the combination irradiance in the plane z.

    Dense scan over +-4 x (largest mode spot radius), then coordinate
    refinement to ``resolution * W(z)``; HG peaks are finally polished by
    solving the gradient equations. The gradient at the result is returned
    as a diagnostic.
    """
    w = spot_radius(beam, z)
    half = 4.0 * _max_spot_radius(combo, beam, z)
    if combo.family is Family.LG:
        return _lg_peak(combo, beam, z, w, half, resolution)
    return _hg_peak(combo, beam, z, w, half, grid_points, resolution)


def _lg_peak(combo, beam, z, w, half, resolution):
    r = np.linspace(0.0, half, 4001)
    p = combination_radial_irradiance(combo, beam, r, z)
    k = int(np.argmax(p))
    grad = np.abs(_lg_radial_derivative(combo, w, r))
    max_grad = float(np.max(grad))
    if k == 0 and p[0] >= p[1]:
        r_star = 0.0
    else:
        prof = lambda t: float(combination_radial_irradiance(combo, beam, t, z))
        lo, hi = float(r[max(k - 1, 0)]), float(r[min(k + 1, r.size - 1)])
        # finer than ``resolution`` so the stationarity residual is meaningful
        r_star = golden_section_max(prof, lo, hi, min(resolution, 1e-9) * w)
        if prof(0.0) >= prof(r_star):
            r_star = 0.0
    val = float(combination_radial_irradiance(combo, beam, r_star, z))
    res = abs(float(_lg_radial_derivative(combo, w, r_star)))
    return PeakLocation(r_star, 0.0, val, res, max_grad)


def _hg_peak(combo, beam, z, w, half, n, resolution):
    g = np.linspace(-half, half, n)
    X, Y = np.meshgrid(g, g, indexing="xy")
    vals = combination_irradiance(combo, beam, X, Y, z)
    iy, ix = np.unravel_index(int(np.argmax(vals)), vals.shape)
    gx, gy = irradiance_gradient(combo, beam, X, Y, z)
    max_grad = float(np.max(np.hypot(gx, gy)))

    f = lambda px, py: float(combination_irradiance(combo, beam, px, py, z))
    x, y = float(X[iy, ix]), float(Y[iy, ix])
    best = f(x, y)
    step = g[1] - g[0]
    # compass search: accept any improving axis move, else halve the step
    while step > resolution * w:
        moved = False
        for dx, dy in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
            cand = f(x + dx, y + dy)
            if cand > best:
                x, y, best = x + dx, y + dy, cand
                moved = True
                break
        if not moved:
            step *= 0.5

    def grad(p):
        gx_, gy_ = irradiance_gradient(combo, beam, p[0], p[1], z)
        return [float(gx_), float(gy_)]

    # hybr often reports "no further improvement" at the root itself, so the
    # candidate is judged on its residual rather than on sol.success
    sol = optimize.root(grad, [x, y], method="hybr", options={"xtol": 1e-14})
    px, py = map(float, sol.x)
    if (
        np.all(np.isfinite(sol.x))
        and math.hypot(px - x, py - y) <= 2 * resolution * w
        and f(px, py) >= best
        and math.hypot(*grad([px, py])) < math.hypot(*grad([x, y]))
    ):
        x, y, best = px, py, f(px, py)
    # symmetric profiles: snap numerically-zero coordinates to the axis
    if abs(x) < 1e-12 * w:
        x = 0.0
    if abs(y) < 1e-12 * w:
        y = 0.0
    gx0, gy0 = grad([x, y])
    return PeakLocation(float(x), float(y), f(x, y), math.hypot(gx0, gy0), max_grad)


# --------------------------------------------------------------------------
# aperture power


def power_through_disk(
    combo: ModeCombination,
    beam: BeamParams,
    P_t: float,
    center: Sequence[float],
    r_p: float,
    z: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Power of a multimode beam through a disk of radius ``r_p`` at ``center``.

    HG: Cartesian integral with circle-chord y-limits. LG: polar integral
    about the beam axis, split by whether the axis lies inside the disk.
    Both run through adaptive Gauss-Legendre quadrature.
    """
    if not r_p > 0:
        raise ParameterError("aperture radius must be > 0")
    spec = spec or QuadratureSpec()
    x0, y0 = float(center[0]), float(center[1])
    if combo.family is Family.HG:
        value = _hg_disk(combo, beam, x0, y0, r_p, z, spec)
    else:
        value = _lg_disk(combo, beam, x0, y0, r_p, z, spec)
    return P_t * value


def _hg_disk(combo, beam, x0, y0, r_p, z, spec):
    # x = x0 + r_p sin(s) removes the square-root endpoint behaviour of the chord
    def g(s, t):
        cs = np.cos(s)
        x = x0 + r_p * np.sin(s)
        y = y0 + r_p * cs * t
        return combination_irradiance(combo, beam, x, y, z) * (r_p * r_p) * cs * cs

    value, _ = integrate_rectangle(g, (-0.5 * math.pi, 0.5 * math.pi), (-1.0, 1.0), spec)
    return value


def _lg_disk(combo, beam, x0, y0, r_p, z, spec):
    r0 = math.hypot(x0, y0)
    th0 = math.atan2(y0, x0)
    prof = lambda r: combination_radial_irradiance(combo, beam, r, z)

    if r_p > r0:
        # axis inside the aperture: full turn, r from 0 to the far chord point
        def g(th, t):
            d = th - th0
            r2 = r0 * np.cos(d) + np.sqrt(r_p**2 - (r0 * np.sin(d)) ** 2)
            r = r2 * t
            return prof(r) * r2 * r2 * t

        value, _ = integrate_rectangle(g, (th0, th0 + 2 * math.pi), (0.0, 1.0), spec)
        return value

    # axis outside: wedge th0 +- asin(r_p/r0); sin(th - th0) = (r_p/r0) sin(s)
    k = r_p / r0

    def g(s, t):
        cs = np.cos(s)
        d = np.arcsin(k * np.sin(s))
        cd = np.cos(d)
        half_chord = r_p * cs
        r1 = r0 * cd - half_chord
        r = r1 + 2.0 * half_chord * t
        dth = k * cs / cd
        return prof(r) * r * (2.0 * half_chord) * dth

    value, _ = integrate_rectangle(g, (-0.5 * math.pi, 0.5 * math.pi), (0.0, 1.0), spec)
    return value
