"""Numerical kernels: adaptive disk quadrature, bracketed roots, log-grid argmax.

All routines are deterministic: node tables are fixed at import time and
partial sums are reduced in a fixed order, so identical inputs give
bit-identical outputs.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import optimize, special

from .errors import BracketError, NonConvergenceError, ParameterError

__all__ = [
    "QuadratureSpec",
    "integrate_disk",
    "integrate_rectangle",
    "find_root_bracketed",
    "argmax_scan",
    "golden_section_max",
]

TWO_PI = 2.0 * math.pi
_MAX_LEAVES = 20000


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy controls for the adaptive 2D quadrature.

    ``max_subdivisions`` caps the dyadic depth of any single cell.
    ``absolute_tolerance`` is a floor used when the integral is ~0.
    """

    relative_tolerance: float = 1e-8
    max_subdivisions: int = 20
    base_order: int = 16
    absolute_tolerance: float = 0.0

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise ParameterError("relative_tolerance must be > 0")
        if self.base_order < 2:
            raise ParameterError("base_order must be >= 2")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be >= 1")
        if self.absolute_tolerance < 0:
            raise ParameterError("absolute_tolerance must be >= 0")


@lru_cache(maxsize=None)
def _legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


@lru_cache(maxsize=None)
def _jacobi01(n):
    # weight (1 + x) on [-1, 1]: absorbs the polar Jacobian on cells touching r = 0
    x, w = special.roots_jacobi(n, 0.0, 1.0)
    return x, w


def _polar_cell(f, cx, cy, r0, r1, p0, p1, n):
    """Tensor-product estimate of the integral of f over one polar cell."""
    if r0 == 0.0:
        xr, wr = _jacobi01(n)
        rho = 0.5 * r1 * (1.0 + xr)
        wrho = wr * (0.25 * r1 * r1)
    else:
        xr, wr = _legendre(n)
        half = 0.5 * (r1 - r0)
        rho = 0.5 * (r1 + r0) + half * xr
        wrho = wr * half * rho
    xp, wp = _legendre(n)
    hp = 0.5 * (p1 - p0)
    phi = 0.5 * (p1 + p0) + hp * xp
    wphi = wp * hp
    # rows: angle, columns: radius -> innermost sum is radial
    pts_x = cx + rho[None, :] * np.cos(phi)[:, None]
    pts_y = cy + rho[None, :] * np.sin(phi)[:, None]
    vals = np.asarray(f(pts_x, pts_y), dtype=float)
    vals = np.broadcast_to(vals, pts_x.shape)
    return float(np.dot(wphi, vals @ wrho))


def _rect_cell(g, u0, u1, v0, v1, n):
    xu, wu = _legendre(n)
    hu = 0.5 * (u1 - u0)
    hv = 0.5 * (v1 - v0)
    u = 0.5 * (u1 + u0) + hu * xu
    v = 0.5 * (v1 + v0) + hv * xu
    vals = np.asarray(g(u[:, None], v[None, :]), dtype=float)
    vals = np.broadcast_to(vals, (n, n))
    return float(np.dot(wu * hu, vals @ (wu * hv)))


def _split(cell):
    u0, u1, v0, v1, depth = cell
    um = 0.5 * (u0 + u1)
    vm = 0.5 * (v0 + v1)
    d = depth + 1
    return (
        (u0, um, v0, vm, d),
        (u0, um, vm, v1, d),
        (um, u1, v0, vm, d),
        (um, u1, vm, v1, d),
    )


def _adaptive(rule, root, spec: QuadratureSpec):
    """Adaptive dyadic refinement driven by coarse-vs-children differences.

    ``rule(cell)`` returns the base estimate on one cell. Each leaf keeps its
    coarse estimate and the sum over its four children; the worst leaf is
    split until the summed differences fall under tolerance.
    """

    def make_leaf(cell):
        coarse = rule(cell)
        kids = _split(cell)
        kid_vals = [rule(k) for k in kids]
        fine = math.fsum(kid_vals)
        return cell, fine, abs(fine - coarse)

    leaves = {}
    heap = []

    def push(leaf):
        cell, fine, err = leaf
        leaves[cell] = (fine, err)
        heapq.heappush(heap, (-err, cell))

    push(make_leaf(root))
    while True:
        fines = [leaves[c][0] for c in sorted(leaves)]
        errs = [leaves[c][1] for c in sorted(leaves)]
        total = math.fsum(fines)
        err_total = math.fsum(errs)
        target = max(spec.relative_tolerance * abs(total), spec.absolute_tolerance)
        if err_total <= target:
            return total, err_total
        _, worst = heapq.heappop(heap)
        if worst[4] >= spec.max_subdivisions or len(leaves) >= _MAX_LEAVES:
            raise NonConvergenceError(
                f"quadrature did not converge (residual {err_total:.3e}, "
                f"target {target:.3e})",
                value=total,
                error_estimate=err_total,
            )
        del leaves[worst]
        for kid in _split(worst):
            push(make_leaf(kid))


def integrate_disk(
    f: Callable,
    center=(0.0, 0.0),
    radius: float = 1.0,
    spec: QuadratureSpec | None = None,
):
    """Integrate ``f(x, y)`` over a disk.

    Polar tensor-product Gauss rule about ``center`` with adaptive dyadic
    subdivision in (radius, angle). ``f`` must accept broadcastable numpy
    arrays. Returns ``(value, error_estimate)``.

    Raises
    ------
    NonConvergenceError
        If the subdivision cap is reached before the tolerance is met.
    """
    spec = spec or QuadratureSpec()
    if radius < 0:
        raise ParameterError("radius must be >= 0")
    if radius == 0:
        return 0.0, 0.0
    cx, cy = float(center[0]), float(center[1])
    n = spec.base_order

    def rule(cell):
        r0, r1, p0, p1, _ = cell
        return _polar_cell(f, cx, cy, r0, r1, p0, p1, n)

    return _adaptive(rule, (0.0, float(radius), 0.0, TWO_PI, 0), spec)


def integrate_rectangle(g: Callable, u_range, v_range, spec: QuadratureSpec | None = None):
    """Adaptive Gauss-Legendre integral of ``g(u, v)`` over a rectangle.

    Any Jacobian of a coordinate map must already be folded into ``g``.
    """
    spec = spec or QuadratureSpec()
    n = spec.base_order

    def rule(cell):
        u0, u1, v0, v1, _ = cell
        return _rect_cell(g, u0, u1, v0, v1, n)

    root = (float(u_range[0]), float(u_range[1]), float(v_range[0]), float(v_range[1]), 0)
    return _adaptive(rule, root, spec)


def find_root_bracketed(g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Bisection root of ``g`` on ``[lo, hi]``; requires a sign change."""
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return float(lo)
    if ghi == 0.0:
        return float(hi)
    if glo * ghi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}] (g={glo:.3e}, {ghi:.3e})")
    return float(optimize.bisect(g, lo, hi, xtol=tol, maxiter=400))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(h: Callable[[float], float], a: float, b: float, tol: float):
    """Maximise a unimodal ``h`` on ``[a, b]`` to interval width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    hc, hd = h(c), h(d)
    while abs(b - a) > tol:
        if hc >= hd:
            b, d, hd = d, c, hc
            c = b - _INV_PHI * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + _INV_PHI * (b - a)
            hd = h(d)
    return 0.5 * (a + b)


def argmax_scan(
    h: Callable[[float], float],
    lo: float,
    hi: float,
    points_per_decade: int = 200,
    refine_tol: float = 1e-9,
) -> float:
    """Global argmax of ``h`` on ``[lo, hi]``.

    Log-spaced scan followed by golden-section refinement between the
    neighbours of the best sample. Ties resolve to the smallest argument.
    """
    if not lo > 0:
        raise ParameterError("argmax_scan needs lo > 0")
    if hi <= lo:
        return float(lo)
    decades = math.log10(hi / lo)
    npts = max(3, int(math.ceil(decades * points_per_decade)) + 1)
    grid = np.logspace(math.log10(lo), math.log10(hi), npts)
    grid[0], grid[-1] = lo, hi
    vals = np.array([h(float(z)) for z in grid])
    k = int(np.argmax(vals))  # first maximum -> smallest z on ties
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, npts - 1)]
    refined = golden_section_max(h, float(a), float(b), refine_tol)
    best_x, best_v = float(grid[k]), float(vals[k])
    rv = h(refined)
    if rv > best_v:
        best_x, best_v = refined, rv
    if k > 0 and h(lo) >= best_v:
        return float(lo)
    return best_x
