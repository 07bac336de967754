"""Scenario configuration: JSON with unit-suffixed keys, converted to SI on load.

Example::

    {
      "source":   {"wavelength_nm": 850, "waist_um": 5, "preset": "LG-Comb 3"},
      "optics":   {"kind": "thin_lens", "f_mm": 40, "d1_mm": 80},
      "exposure": {"t_ex_s": 100, "pupil_radius_mm": 3.5, "tissue": "eye"},
      "method":   "auto"
    }

``optics.kind`` is one of none, thin_lens, thick_lens, diffuser, array.
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, ParameterError
from .gaussian_beam import BeamParams, paraxial_divergence
from .limits import ExposureContext
from .modes import ModeCombination, combination_divergence_ratio
from .optics import DiffuserKind, DiffuserSpec, ThickLensSpec, ThinLensSpec
from .presets import get_preset
from .safety import (
    ArraySpec,
    MIN_EVALUATION_DISTANCE,
    SafetyResult,
    ShieldContext,
    ptmax_array,
    ptmax_lambertian_diffuser,
    ptmax_multimode_decomposition,
    ptmax_multimode_decomposition_scan,
    ptmax_multimode_msquared,
    ptmax_single_mode,
    ptmax_skin_gaussian,
    ptmax_skin_multimode,
    ptmax_uniform_diffuser,
    ptmax_with_lens,
    ptmax_with_thick_lens,
)

__all__ = [
    "NoOptics",
    "ThinLensOptics",
    "ThickLensOptics",
    "DiffuserOptics",
    "ArrayOptics",
    "ScenarioConfig",
    "SWEEP_AXES",
    "load_config",
    "parse_config",
    "apply_axis",
    "evaluate",
]

METHODS = ("auto", "msquared", "decomposition", "decomposition_scan")
TISSUES = ("eye", "skin")


@dataclass(frozen=True)
class NoOptics:
    pass


@dataclass(frozen=True)
class ThinLensOptics:
    focal_length: float
    object_distance: float


@dataclass(frozen=True)
class ThickLensOptics:
    lens: ThickLensSpec
    object_distance: float


@dataclass(frozen=True)
class DiffuserOptics:
    spec: DiffuserSpec
    z_haz: float = MIN_EVALUATION_DISTANCE


@dataclass(frozen=True)
class ArrayOptics:
    side_count: int
    pitch: float


@dataclass(frozen=True)
class ScenarioConfig:
    """A fully validated scenario in SI units."""

    wavelength: float
    waist: float
    combo: ModeCombination | None = None
    divergence_ratio: float | None = None
    optics: object = NoOptics()
    t_ex: float = 100.0
    pupil_radius: float = 3.5e-3
    tissue: str = "eye"
    shield_distance: float = 0.0
    method: str = "auto"
    z_eval: float = MIN_EVALUATION_DISTANCE

    @property
    def beam(self) -> BeamParams:
        return BeamParams(self.wavelength, self.waist)

    @property
    def context(self) -> ExposureContext:
        return ExposureContext(self.t_ex, self.wavelength, self.pupil_radius)


# --------------------------------------------------------------------------
# parsing helpers


def _get(block, key, path, default=dataclasses.MISSING, kind=float):
    if key not in block:
        if default is dataclasses.MISSING:
            raise ConfigError("required field missing", path=f"{path}.{key}")
        return default
    value = block[key]
    try:
        if kind is float:
            if isinstance(value, bool):
                raise TypeError
            out = float(value)
            if not math.isfinite(out):
                raise ValueError
            return out
        if kind is int:
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if kind is str:
            if not isinstance(value, str):
                raise TypeError
            return value
    except (TypeError, ValueError):
        raise ConfigError(f"expected {kind.__name__}, got {value!r}", path=f"{path}.{key}") from None
    return value


def _block(raw, key, path, required=True):
    if key not in raw:
        if required:
            raise ConfigError("required block missing", path=f"{path}{key}")
        return {}
    value = raw[key]
    if not isinstance(value, dict):
        raise ConfigError("expected an object", path=f"{path}{key}")
    return value


def _reject_unknown(block, allowed, path):
    extra = sorted(set(block) - set(allowed))
    if extra:
        raise ConfigError(f"unknown field(s) {extra}", path=path)


def _parse_modes(src):
    if "preset" in src and "modes" in src:
        raise ConfigError("give either preset or modes, not both", path="source")
    if "preset" in src:
        name = _get(src, "preset", "source", kind=str)
        return get_preset(name).combination
    if "modes" not in src:
        return None
    modes = src["modes"]
    if not isinstance(modes, dict):
        raise ConfigError("expected an object", path="source.modes")
    family = _get(modes, "family", "source.modes", kind=str)
    entries = modes.get("entries")
    if not isinstance(entries, list) or not entries:
        raise ConfigError("expected a non-empty list", path="source.modes.entries")
    pairs = []
    for k, e in enumerate(entries):
        p = f"source.modes.entries[{k}]"
        if not isinstance(e, dict):
            raise ConfigError("expected an object", path=p)
        pairs.append(((_get(e, "l", p, kind=int), _get(e, "m", p, kind=int)), _get(e, "c", p)))
    try:
        return ModeCombination.from_pairs(family, pairs)
    except ParameterError as exc:
        raise ConfigError(str(exc), path="source.modes") from None


def _parse_optics(raw):
    opt = _block(raw, "optics", "", required=False)
    if not opt:
        return NoOptics()
    kind = _get(opt, "kind", "optics", kind=str)
    p = "optics"
    if kind == "none":
        _reject_unknown(opt, ("kind",), p)
        return NoOptics()
    if kind == "thin_lens":
        _reject_unknown(opt, ("kind", "f_mm", "d1_mm"), p)
        return ThinLensOptics(_get(opt, "f_mm", p) * 1e-3, _get(opt, "d1_mm", p) * 1e-3)
    if kind == "thick_lens":
        keys = ("kind", "n", "thickness_mm", "front_radius_mm", "back_radius_mm", "d1_mm")
        _reject_unknown(opt, keys, p)
        lens = ThickLensSpec(
            _get(opt, "n", p),
            _get(opt, "thickness_mm", p) * 1e-3,
            _get(opt, "front_radius_mm", p) * 1e-3,
            _get(opt, "back_radius_mm", p) * 1e-3,
        )
        return ThickLensOptics(lens, _get(opt, "d1_mm", p) * 1e-3)
    if kind == "diffuser":
        keys = ("kind", "type", "order", "fwhm_deg", "f_mm", "diameter_mm", "z_d_mm", "z_haz_m")
        _reject_unknown(opt, keys, p)
        dtype = _get(opt, "type", p, kind=str)
        if dtype not in ("lambertian", "uniform"):
            raise ConfigError("expected 'lambertian' or 'uniform'", path="optics.type")
        z_d = _get(opt, "z_d_mm", p, default=None)
        spec = DiffuserSpec(
            DiffuserKind(dtype),
            _get(opt, "diameter_mm", p) * 1e-3,
            _get(opt, "f_mm", p) * 1e-3,
            lambertian_order=_get(opt, "order", p) if dtype == "lambertian" else None,
            fwhm_angle=math.radians(_get(opt, "fwhm_deg", p)) if dtype == "uniform" else None,
            lens_to_diffuser=None if z_d is None else z_d * 1e-3,
        )
        return DiffuserOptics(spec, _get(opt, "z_haz_m", p, default=MIN_EVALUATION_DISTANCE))
    if kind == "array":
        _reject_unknown(opt, ("kind", "n", "pitch_um"), p)
        return ArrayOptics(_get(opt, "n", p, kind=int), _get(opt, "pitch_um", p) * 1e-6)
    raise ConfigError(f"unknown optics kind {kind!r}", path="optics.kind")


def parse_config(raw: dict) -> ScenarioConfig:
    """Validate a decoded JSON document and convert it to SI."""
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object")
    _reject_unknown(raw, ("source", "optics", "exposure", "method", "z_eval_m"), "<root>")
    src = _block(raw, "source", "")
    _reject_unknown(src, ("wavelength_nm", "waist_um", "preset", "modes", "divergence_ratio"), "source")
    exp = _block(raw, "exposure", "")
    _reject_unknown(exp, ("t_ex_s", "pupil_radius_mm", "tissue", "shield_distance_m"), "exposure")
    method = raw.get("method", "auto")
    if method not in METHODS:
        raise ConfigError(f"expected one of {METHODS}", path="method")
    tissue = _get(exp, "tissue", "exposure", default="eye", kind=str)
    if tissue not in TISSUES:
        raise ConfigError(f"expected one of {TISSUES}", path="exposure.tissue")
    try:
        optics = _parse_optics(raw)
    except ParameterError as exc:
        raise ConfigError(str(exc), path="optics") from None
    try:
        cfg = ScenarioConfig(
            wavelength=_get(src, "wavelength_nm", "source") * 1e-9,
            waist=_get(src, "waist_um", "source") * 1e-6,
            combo=_parse_modes(src),
            divergence_ratio=_get(src, "divergence_ratio", "source", default=None),
            optics=optics,
            t_ex=_get(exp, "t_ex_s", "exposure"),
            pupil_radius=_get(exp, "pupil_radius_mm", "exposure", default=3.5) * 1e-3,
            tissue=tissue,
            shield_distance=_get(exp, "shield_distance_m", "exposure", default=0.0),
            method=method,
            z_eval=_get(raw, "z_eval_m", "<root>", default=MIN_EVALUATION_DISTANCE),
        )
        cfg.beam  # validates wavelength and waist
    except ConfigError:
        raise
    except ParameterError as exc:
        raise ConfigError(str(exc), path="source") from None
    if tissue == "skin" and not isinstance(cfg.optics, NoOptics):
        raise ConfigError("skin scenarios take no optics block", path="optics")
    if cfg.combo is not None and isinstance(cfg.optics, (ThinLensOptics, ThickLensOptics, ArrayOptics)):
        raise ConfigError("mode combinations are only supported without optics or with a diffuser", path="source")
    return cfg


def load_config(path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path=str(path)) from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}", path=str(path)) from None
    return parse_config(raw)


# --------------------------------------------------------------------------
# sweeps

# axis -> (unit label, factor to SI)
SWEEP_AXES = {
    "t_ex": ("s", 1.0),
    "wavelength": ("nm", 1e-9),
    "divergence": ("deg", math.pi / 180.0),
    "focal_length": ("mm", 1e-3),
    "d1": ("mm", 1e-3),
    "pitch": ("um", 1e-6),
    "theta_d": ("deg", math.pi / 180.0),
}


def apply_axis(cfg: ScenarioConfig, axis: str, value: float) -> ScenarioConfig:
    """Return ``cfg`` with one parameter replaced; ``value`` is in the axis unit."""
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown axis {axis!r}; expected one of {sorted(SWEEP_AXES)}", path="--axis")
    si = value * SWEEP_AXES[axis][1]
    opt = cfg.optics
    if axis == "t_ex":
        return dataclasses.replace(cfg, t_ex=si)
    if axis == "wavelength":
        return dataclasses.replace(cfg, wavelength=si)
    if axis == "divergence":
        # half-angle paraxial divergence; the waist follows from lambda / (pi theta)
        if not si > 0:
            raise ParameterError("divergence must be > 0")
        return dataclasses.replace(cfg, waist=cfg.wavelength / (math.pi * si))
    if axis == "focal_length":
        if isinstance(opt, ThinLensOptics):
            return dataclasses.replace(cfg, optics=dataclasses.replace(opt, focal_length=si))
        if isinstance(opt, DiffuserOptics):
            spec = dataclasses.replace(opt.spec, collimating_focal_length=si)
            return dataclasses.replace(cfg, optics=dataclasses.replace(opt, spec=spec))
    if axis == "d1" and isinstance(opt, (ThinLensOptics, ThickLensOptics)):
        return dataclasses.replace(cfg, optics=dataclasses.replace(opt, object_distance=si))
    if axis == "pitch" and isinstance(opt, ArrayOptics):
        return dataclasses.replace(cfg, optics=dataclasses.replace(opt, pitch=si))
    if axis == "theta_d" and isinstance(opt, DiffuserOptics) and opt.spec.kind is DiffuserKind.UNIFORM:
        spec = dataclasses.replace(opt.spec, fwhm_angle=si)
        return dataclasses.replace(cfg, optics=dataclasses.replace(opt, spec=spec))
    raise ConfigError(f"axis {axis!r} does not apply to optics {type(opt).__name__}", path="--axis")


# --------------------------------------------------------------------------
# dispatch


def evaluate(cfg: ScenarioConfig) -> SafetyResult:
    """Run the pipeline selected by the scenario."""
    ctx = cfg.context
    beam = cfg.beam
    opt = cfg.optics
    if cfg.tissue == "skin":
        shield = ShieldContext(cfg.shield_distance)
        if cfg.combo is not None:
            return ptmax_skin_multimode(cfg.combo, beam, shield, ctx)
        return ptmax_skin_gaussian(beam, shield, ctx)
    if isinstance(opt, ThinLensOptics):
        return ptmax_with_lens(beam, ThinLensSpec(opt.focal_length, opt.object_distance), ctx)
    if isinstance(opt, ThickLensOptics):
        return ptmax_with_thick_lens(beam, opt.lens, opt.object_distance, ctx)
    if isinstance(opt, ArrayOptics):
        return ptmax_array(ArraySpec(opt.side_count, opt.pitch, beam), ctx)
    if isinstance(opt, DiffuserOptics):
        if opt.spec.kind is DiffuserKind.LAMBERTIAN:
            return ptmax_lambertian_diffuser(opt.spec, beam, ctx, opt.z_haz)
        return ptmax_uniform_diffuser(opt.spec, beam, ctx, opt.z_haz)
    if cfg.combo is None:
        return ptmax_single_mode(beam, ctx)
    if cfg.method == "msquared":
        ratio = cfg.divergence_ratio
        if ratio is None:
            ratio = combination_divergence_ratio(cfg.combo, beam)
        return ptmax_multimode_msquared(ratio * paraxial_divergence(beam), ctx)
    if cfg.method == "decomposition_scan":
        return ptmax_multimode_decomposition_scan(cfg.combo, beam, ctx)
    return ptmax_multimode_decomposition(cfg.combo, beam, ctx, cfg.z_eval)
