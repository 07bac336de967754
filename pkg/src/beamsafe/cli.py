"""``beamsafe`` command line: ptmax, sweep, field, presets.

Exit codes: 0 ok, 2 configuration error, 3 unsupported wavelength or
duration, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import SWEEP_AXES, ArrayOptics, apply_axis, evaluate, load_config
from .errors import BeamsafeError, ConfigError, NumericsError, ParameterError, UnsupportedDomainError
from .gaussian_beam import gaussian_irradiance, spot_radius
from .modes import (
    combination_divergence_ratio,
    combination_irradiance,
    mode_spot_radius,
    peak_irradiance_location,
)
from .presets import PRESETS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NUMERICS = 4
MAX_GRID = 4096
SWEEP_COLUMNS = ("axis_value", "p_t_max_W", "z_haz_m", "alpha_rad", "mpe_W_m2", "branch_id", "error")


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, UnsupportedDomainError):
        return EXIT_DOMAIN
    if isinstance(exc, NumericsError):
        return EXIT_NUMERICS
    return EXIT_CONFIG


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _workers() -> int:
    raw = os.environ.get("BEAMSAFE_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"expected a positive integer, got {raw!r}", path="BEAMSAFE_THREADS") from None
    if n < 1:
        raise ConfigError("must be >= 1", path="BEAMSAFE_THREADS")
    return n


# --------------------------------------------------------------------------
# commands


def cmd_ptmax(args) -> int:
    cfg = load_config(args.config)
    res = evaluate(cfg)
    rec = res.as_record()
    print(
        f"{rec['method']}: P_t,max = {res.p_t_max * 1e3:.6g} mW "
        f"(z_haz {res.z_haz:.6g} m, alpha {res.alpha * 1e3:.6g} mrad, "
        f"MPE {res.mpe.mpe:.6g} W/m^2, {rec['branch_id']})",
        file=sys.stderr,
    )
    if args.format == "csv":
        buf = io.StringIO()
        keys = [k for k in rec if k != "notes"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        w.writerow([_fmt(rec[k]) for k in keys])
        text = buf.getvalue()
    else:
        text = json.dumps(rec, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _axis_values(lo, hi, steps, log):
    if steps < 1:
        raise ConfigError("must be >= 1", path="--steps")
    if steps == 1:
        return [float(lo)]
    if log:
        if not (lo > 0 and hi > 0):
            raise ConfigError("log sweep needs positive bounds", path="--from/--to")
        vals = np.logspace(math.log10(lo), math.log10(hi), steps)
    else:
        vals = np.linspace(lo, hi, steps)
    vals[0], vals[-1] = lo, hi
    return [float(v) for v in vals]


def _sweep_point(cfg, axis, value):
    try:
        res = evaluate(apply_axis(cfg, axis, value))
    except BeamsafeError as exc:
        return {"axis_value": value, "error": f"{type(exc).__name__}: {exc}"}
    return {
        "axis_value": value,
        "p_t_max_W": res.p_t_max,
        "z_haz_m": res.z_haz,
        "alpha_rad": res.alpha,
        "mpe_W_m2": res.mpe.mpe,
        "branch_id": res.mpe.branch_id,
        "error": "",
    }


def run_sweep(cfg, axis, values, workers=1):
    """Evaluate a scenario at each axis value; rows come back in input order."""
    if axis not in SWEEP_AXES:
        raise ConfigError(f"expected one of {sorted(SWEEP_AXES)}", path="--axis")
    # fail fast when the axis cannot apply to this scenario at all
    apply_axis(cfg, axis, values[0])
    if workers <= 1:
        return [_sweep_point(cfg, axis, v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda v: _sweep_point(cfg, axis, v), values))


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    values = _axis_values(args.lo, args.hi, args.steps, args.log)
    rows = run_sweep(cfg, args.axis, values, _workers())
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([_fmt(r.get(k)) for k in SWEEP_COLUMNS])
        text = buf.getvalue()
    _emit(text, args.out)
    failed = sum(1 for r in rows if r["error"])
    if failed:
        print(f"{failed} of {len(rows)} sweep points failed", file=sys.stderr)
    return EXIT_OK


def field_samples(cfg, z, n):
    """Irradiance per watt [1/m^2] on an n x n grid, plus the peak description."""
    if not 1 <= n <= MAX_GRID:
        raise ConfigError(f"must lie in [1, {MAX_GRID}]", path="--grid")
    beam = cfg.beam
    opt = cfg.optics
    if cfg.combo is not None:
        radius = max(mode_spot_radius(m, beam, z) for m in cfg.combo.modes)
    else:
        radius = spot_radius(beam, z)
    half = 4.0 * radius
    offsets = [(0.0, 0.0)]
    if isinstance(opt, ArrayOptics):
        k = (np.arange(opt.side_count) - 0.5 * (opt.side_count - 1)) * opt.pitch
        offsets = [(float(a), float(b)) for b in k for a in k]
        half += 0.5 * (opt.side_count - 1) * opt.pitch
    g = np.linspace(-half, half, n) if n > 1 else np.zeros(1)
    X, Y = np.meshgrid(g, g, indexing="xy")
    if cfg.combo is not None:
        vals = combination_irradiance(cfg.combo, beam, X, Y, z)
    else:
        vals = np.zeros_like(X)
        for a, b in offsets:
            vals = vals + gaussian_irradiance(beam, 1.0, np.hypot(X - a, Y - b), z)
    iy, ix = np.unravel_index(int(np.argmax(vals)), vals.shape)
    meta = {
        "z_m": z,
        "grid_n": n,
        "half_width_m": half,
        "emitters": len(offsets),
        "grid_peak": {"x_m": float(X[iy, ix]), "y_m": float(Y[iy, ix]), "irradiance_per_W": float(vals[iy, ix])},
    }
    if cfg.combo is not None:
        pk = peak_irradiance_location(cfg.combo, beam, z)
        meta["peak"] = {
            "x_m": pk.x,
            "y_m": pk.y,
            "irradiance_per_W": pk.irradiance,
            "stationarity_residual": pk.relative_residual,
        }
    else:
        meta["peak"] = meta["grid_peak"]
    return vals, meta


def cmd_field(args) -> int:
    cfg = load_config(args.config)
    vals, meta = field_samples(cfg, args.z, args.grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in vals:
        w.writerow([repr(float(v)) for v in row])
    _emit(buf.getvalue(), args.out)
    side = json.dumps(meta, indent=2) + "\n"
    if args.out:
        Path(args.out).with_suffix(".json").write_text(side)
    else:
        sys.stderr.write(side)
    return EXIT_OK


def cmd_presets(args) -> int:
    from .gaussian_beam import BeamParams

    beam = BeamParams(850e-9, 5e-6)
    rows = []
    for name, p in PRESETS.items():
        rows.append(
            {
                "name": name,
                "coefficients": list(p.coefficients),
                "tabulated_ratio": p.tabulated_ratio,
                "computed_ratio": combination_divergence_ratio(p.combination, beam),
            }
        )
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "coefficients", "tabulated_ratio", "computed_ratio"])
        for r in rows:
            coeffs = " ".join(repr(c) for c in r["coefficients"])
            w.writerow([r["name"], coeffs, repr(r["tabulated_ratio"]), f"{r['computed_ratio']:.6f}"])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beamsafe", description="Eye- and skin-safe laser transmit power.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ptmax", help="evaluate one scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ptmax)

    p = sub.add_parser("sweep", help="evaluate a scenario over one parameter")
    p.add_argument("--config", required=True)
    p.add_argument("--axis", required=True, choices=sorted(SWEEP_AXES))
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--log", action="store_true", help="log-spaced axis")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("field", help="export an irradiance map")
    p.add_argument("--config", required=True)
    p.add_argument("--z", type=float, default=0.1, help="plane distance [m]")
    p.add_argument("--grid", type=int, default=201, help="samples per side")
    p.add_argument("--out")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("presets", help="named mode combinations")
    psub = p.add_subparsers(dest="presets_command", required=True)
    pl = psub.add_parser("list")
    pl.add_argument("--format", choices=("csv", "json"), default="csv")
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BeamsafeError, ParameterError) as exc:
        print(f"beamsafe: error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
