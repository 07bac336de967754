"""Independent reference computations used only by the test-suite.

Nothing here calls the quadrature or pipeline code under test.
"""
import math

import numpy as np
from scipy import stats

MC_SEED = 20240607


def mc_disk_integral(f, center, radius, n_samples=1_000_000, seed=MC_SEED):
    """Monte-Carlo integral of f over a disk. Returns (estimate, standard error)."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n_samples))
    phi = 2.0 * math.pi * rng.random(n_samples)
    x = center[0] + r * np.cos(phi)
    y = center[1] + r * np.sin(phi)
    vals = np.asarray(f(x, y), dtype=float) * (math.pi * radius**2)
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_samples))


def offset_gaussian_fraction(w, offset, radius):
    """Fraction of a Gaussian of 1/e^2 radius w inside a disk whose centre is ``offset`` away.

    Uses the non-central chi-square law with two degrees of freedom.
    """
    s2 = w * w / 4.0  # per-axis variance of the normalised intensity
    return float(stats.ncx2.cdf(radius**2 / s2, 2, offset**2 / s2)) if offset > 0 else float(
        stats.chi2.cdf(radius**2 / s2, 2)
    )


def straight_line_ptmax(wavelength, w0, t_ex, r_p=3.5e-3):
    """Single-mode pipeline written out longhand for point sources at t_ex >= 10 s."""
    theta = wavelength / (math.pi * w0)
    d86 = (math.pi * w0 / wavelength) * math.sqrt(-2.0 * r_p**2 / math.log(0.14))
    if 2 * theta > 0.092 and d86 < 0.1:
        z = 0.1
    else:
        alpha = 2 * math.atan(w0 / d86)
        z = w0 / 0.0021 if alpha < 1.5e-3 else 9.2 * math.pi * w0 / (2 * wavelength)
    w_ff = wavelength * z / (math.pi * w0)
    eta = 1.0 - math.exp(-2.0 * r_p**2 / w_ff**2)
    nm = wavelength * 1e9
    c4 = 10 ** (0.002 * (nm - 700)) if nm < 1050 else 5.0
    c7 = 1.0 if nm < 1150 else (10 ** (0.018 * (nm - 1150)) if nm < 1200 else 8.0)
    assert t_ex >= 10
    mpe = 10.0 * c4 * c7
    return mpe * math.pi * r_p**2 / eta


def dense_grid_argmax(fun, half, n=2000):
    g = np.linspace(-half, half, n)
    X, Y = np.meshgrid(g, g, indexing="xy")
    v = fun(X, Y)
    iy, ix = np.unravel_index(int(np.argmax(v)), v.shape)
    return float(X[iy, ix]), float(Y[iy, ix]), float(g[1] - g[0])
