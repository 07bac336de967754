"""Maximum permissible transmit power P_t,max for eye and skin exposure.

Every pipeline returns a :class:`SafetyResult` whose fields satisfy

    p_t_max * sources_in_pupil * eta_or_fraction == mpe.mpe * pi * aperture_radius**2

so the result can be re-verified without rerunning the pipeline.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .gaussian_beam import (
    BeamParams,
    d86_distance,
    gaussian_irradiance,
    paraxial_divergence,
    spot_radius,
)
from .limits import (
    ALPHA_MIN,
    ExposureContext,
    MpeResult,
    alpha_max,
    eye_mpe,
    skin_limiting_aperture,
    skin_mpe,
)
from .modes import (
    ModeCombination,
    combination_divergence_ratio,
    combination_spot_radius,
    embedded_gaussian,
    peak_irradiance_location,
    power_through_disk,
)
from .numerics import QuadratureSpec, argmax_scan, integrate_disk
from .optics import (
    DiffuserKind,
    DiffuserSpec,
    ThickLensSpec,
    ThinLensSpec,
    abcd_image,
    thick_lens_abcd,
    thin_lens_image,
    uniform_received_power,
)

__all__ = [
    "Method",
    "SafetyResult",
    "ArraySpec",
    "ShieldContext",
    "NEAR_FIELD_DIVERGENCE",
    "MIN_EVALUATION_DISTANCE",
    "ptmax_single_mode",
    "ptmax_multimode_msquared",
    "ptmax_multimode_decomposition",
    "ptmax_multimode_decomposition_scan",
    "ptmax_with_lens",
    "ptmax_with_thick_lens",
    "ptmax_array",
    "ptmax_lambertian_diffuser",
    "ptmax_uniform_diffuser",
    "ptmax_skin_gaussian",
    "ptmax_skin_multimode",
    "most_hazardous_position",
]

# full-angle divergence above which the 10 cm evaluation distance is forced
NEAR_FIELD_DIVERGENCE = 0.092
MIN_EVALUATION_DISTANCE = 0.1
_POINT_SOURCE_Z_SCALE = 0.0021
_EXTENDED_Z_SCALE = 9.2
# sub-array power uses the i^2 shortcut beyond this many array widths
_FAR_FIELD_ARRAY_WIDTHS = 100.0


class Method(str, enum.Enum):
    SINGLE_MODE = "SingleMode"
    MSQUARED = "MSquared"
    DECOMPOSITION = "Decomposition"
    LENS = "Lens"
    ARRAY = "Array"
    LAMBERTIAN_DIFFUSER = "LambertianDiffuser"
    UNIFORM_DIFFUSER = "UniformDiffuser"
    SKIN_GAUSSIAN = "SkinGaussian"
    SKIN_MULTIMODE = "SkinMultimode"


@dataclass(frozen=True)
class SafetyResult:
    """P_t,max [W] and the quantities that determine it.

    ``eta_or_fraction`` is the share of one source's power entering the
    aperture; ``sources_in_pupil`` > 1 only for arrays.
    """

    p_t_max: float
    z_haz: float
    alpha: float
    eta_or_fraction: float
    mpe: MpeResult
    method: Method
    aperture_radius: float
    sources_in_pupil: int = 1
    notes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.p_t_max > 0:
            raise ParameterError(f"p_t_max must be > 0, got {self.p_t_max}")
        if not 0 < self.eta_or_fraction <= 1 + 1e-12:
            raise ParameterError(f"eta_or_fraction {self.eta_or_fraction} outside (0, 1]")

    @property
    def received_power(self) -> float:
        return self.p_t_max * self.sources_in_pupil * self.eta_or_fraction

    @property
    def allowed_power(self) -> float:
        return self.mpe.mpe * math.pi * self.aperture_radius**2

    def as_record(self) -> dict:
        """Flat dict for CSV/JSON output."""
        return {
            "method": self.method.value,
            "p_t_max_W": self.p_t_max,
            "z_haz_m": self.z_haz,
            "alpha_rad": self.alpha,
            "eta_or_fraction": self.eta_or_fraction,
            "sources_in_pupil": self.sources_in_pupil,
            "aperture_radius_m": self.aperture_radius,
            "mpe_W_m2": self.mpe.mpe,
            "branch_id": self.mpe.branch_id,
            "source_class": self.mpe.source_class.value if self.mpe.source_class else None,
            "c4": self.mpe.c4,
            "c6": self.mpe.c6,
            "c7": self.mpe.c7,
            "t2_s": self.mpe.t2,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ArraySpec:
    side_count: int
    pitch: float
    emitter: BeamParams
    per_emitter_combo: ModeCombination | None = None

    def __post_init__(self):
        if int(self.side_count) != self.side_count or self.side_count < 1:
            raise ParameterError("side_count must be a positive integer")
        if self.pitch < 0:
            raise ParameterError("pitch must be >= 0")


@dataclass(frozen=True)
class ShieldContext:
    shield_distance: float

    def __post_init__(self):
        if self.shield_distance < 0:
            raise ParameterError("shield_distance must be >= 0")

    def exposed_area(self, beam: BeamParams) -> float:
        return math.pi * spot_radius(beam, self.shield_distance) ** 2


# --------------------------------------------------------------------------
# single mode


def _hazard_geometry(beam: BeamParams, r_p: float):
    """Evaluation distance and subtense from the d86 rule. Returns (z_haz, alpha, note)."""
    w0, lam = beam.waist_radius, beam.wavelength
    theta = paraxial_divergence(beam)
    d86 = d86_distance(beam, r_p)
    if 2.0 * theta > NEAR_FIELD_DIVERGENCE and d86 < MIN_EVALUATION_DISTANCE:
        z = MIN_EVALUATION_DISTANCE
        return z, 2.0 * math.atan(w0 / z), "z_haz fixed at 0.1 m (2theta > 92 mrad and d86 < 0.1 m)"
    alpha = 2.0 * math.atan(w0 / d86)
    if alpha < ALPHA_MIN:
        return w0 / _POINT_SOURCE_Z_SCALE, alpha, "z_haz = w0/0.0021 (alpha < alpha_min)"
    return _EXTENDED_Z_SCALE * math.pi * w0 / (2.0 * lam), alpha, "z_haz = 9.2 pi w0 / (2 lambda)"


def _far_field_eta(beam: BeamParams, r_p: float, z: float) -> float:
    # aperture fraction with the far-field spot radius W = lambda z / (pi w0)
    w_ff = beam.wavelength * z / (math.pi * beam.waist_radius)
    return -math.expm1(-2.0 * r_p**2 / w_ff**2)


def _single_mode(beam, ctx, method, alpha_override=None, notes=()):
    r_p = ctx.pupil_radius
    z_haz, alpha, note = _hazard_geometry(beam, r_p)
    notes = tuple(notes) + (note,)
    if alpha_override is not None:
        alpha = alpha_override
        notes += ("alpha taken from the apparent source at the lens",)
    eta = _far_field_eta(beam, r_p, z_haz)
    mpe = eye_mpe(ctx, alpha)
    p = mpe.mpe * math.pi * r_p**2 / eta
    return SafetyResult(p, z_haz, alpha, eta, mpe, method, r_p, notes=notes)


def ptmax_single_mode(beam: BeamParams, ctx: ExposureContext) -> SafetyResult:
    """Eye-safe P_t,max of an ideal single-mode Gaussian source."""
    _require_same_wavelength(beam, ctx)
    return _single_mode(beam, ctx, Method.SINGLE_MODE)


def _require_same_wavelength(beam, ctx):
    if not math.isclose(beam.wavelength, ctx.wavelength, rel_tol=1e-12):
        raise ParameterError("beam and exposure context disagree on wavelength")


# --------------------------------------------------------------------------
# multimode


def ptmax_multimode_msquared(theta_R: float, ctx: ExposureContext) -> SafetyResult:
    """P_t,max of a multimode source via its embedded Gaussian of divergence theta_R."""
    emb = embedded_gaussian(theta_R, ctx.wavelength)
    beam = BeamParams(ctx.wavelength, emb.w0_em)
    return _single_mode(beam, ctx, Method.MSQUARED, notes=(f"embedded waist {emb.w0_em:.6g} m",))


def _decomposition_at(combo, beam, ctx, z, spec):
    peak = peak_irradiance_location(combo, beam, z)
    frac = power_through_disk(combo, beam, 1.0, (peak.x, peak.y), ctx.pupil_radius, z, spec)
    ratio = combination_divergence_ratio(combo, beam)
    w0_em = beam.waist_radius / ratio
    alpha = 2.0 * math.atan(w0_em / z)
    return peak, frac, alpha


def ptmax_multimode_decomposition(
    combo: ModeCombination,
    beam: BeamParams,
    ctx: ExposureContext,
    z_eval: float = MIN_EVALUATION_DISTANCE,
    spec: QuadratureSpec | None = None,
) -> SafetyResult:
    """P_t,max from the power a pupil centred on the irradiance peak collects at z_eval.

    The subtense uses the embedded-Gaussian waist lambda / (pi theta_R).
    """
    _require_same_wavelength(beam, ctx)
    peak, frac, alpha = _decomposition_at(combo, beam, ctx, z_eval, spec)
    mpe = eye_mpe(ctx, alpha)
    r_p = ctx.pupil_radius
    p = mpe.mpe * math.pi * r_p**2 / frac
    note = f"pupil centred at ({peak.x:.6g}, {peak.y:.6g}) m"
    return SafetyResult(p, z_eval, alpha, frac, mpe, Method.DECOMPOSITION, r_p, notes=(note,))


def ptmax_multimode_decomposition_scan(
    combo: ModeCombination,
    beam: BeamParams,
    ctx: ExposureContext,
    z_upper: float = 10.0,
    points_per_decade: int = 20,
    spec: QuadratureSpec | None = None,
) -> SafetyResult:
    """Like :func:`ptmax_multimode_decomposition` but at the most hazardous position."""
    _require_same_wavelength(beam, ctx)

    def profile(z):
        _, frac, alpha = _decomposition_at(combo, beam, ctx, z, spec)
        return frac, eye_mpe(ctx, alpha).mpe

    z_star = most_hazardous_position(profile, z_upper, points_per_decade=points_per_decade)
    res = ptmax_multimode_decomposition(combo, beam, ctx, z_star, spec)
    return _with_notes(res, f"z_haz from hazard-ratio scan on [0.1, {z_upper:g}] m")


def _with_notes(res: SafetyResult, *extra) -> SafetyResult:
    return SafetyResult(
        res.p_t_max,
        res.z_haz,
        res.alpha,
        res.eta_or_fraction,
        res.mpe,
        res.method,
        res.aperture_radius,
        res.sources_in_pupil,
        tuple(res.notes) + tuple(extra),
    )


# --------------------------------------------------------------------------
# lens


def ptmax_with_lens(beam: BeamParams, lens: ThinLensSpec, ctx: ExposureContext) -> SafetyResult:
    """P_t,max with a thin lens d1 after the waist.

    A real output waist is treated as a new source. For a virtual waist
    the lens itself is the apparent source: the subtense comes from the
    input spot radius at the lens, W(d1), seen from z_haz.
    """
    _require_same_wavelength(beam, ctx)
    return _through_lens(beam, thin_lens_image(beam, lens), lens.object_distance, ctx)


def ptmax_with_thick_lens(
    beam: BeamParams, lens: ThickLensSpec, object_distance: float, ctx: ExposureContext
) -> SafetyResult:
    """As :func:`ptmax_with_lens`, with the output waist found by the complex-q transform."""
    _require_same_wavelength(beam, ctx)
    img = abcd_image(beam, thick_lens_abcd(lens), object_distance)
    return _through_lens(beam, img, object_distance, ctx)


def _through_lens(beam, img, d1, ctx):
    image_beam = BeamParams(beam.wavelength, img.w2)
    notes = (f"d2={img.d2:.6g} m, w2={img.w2:.6g} m, kappa={img.kappa:.9g}",)
    if img.d2 > 0:
        return _single_mode(image_beam, ctx, Method.LENS, notes=notes)
    z_haz, _, _ = _hazard_geometry(image_beam, ctx.pupil_radius)
    alpha = 2.0 * math.atan(spot_radius(beam, d1) / z_haz)
    return _single_mode(image_beam, ctx, Method.LENS, alpha_override=alpha, notes=notes + ("virtual image",))


# --------------------------------------------------------------------------
# arrays


def _block_offsets(i, pitch):
    k = (np.arange(i) - 0.5 * (i - 1)) * pitch
    xx, yy = np.meshgrid(k, k, indexing="xy")
    return xx.ravel(), yy.ravel()


def _subarray_fraction(emitter, i, pitch, r_p, z, spec):
    """Pupil power per unit per-emitter power for a centred i x i block."""
    if pitch == 0 or z > _FAR_FIELD_ARRAY_WIDTHS * i * pitch:
        w = spot_radius(emitter, z)
        return i * i * -math.expm1(-2.0 * r_p**2 / w**2), True
    xs, ys = _block_offsets(i, pitch)

    def f(x, y):
        total = 0.0
        for xk, yk in zip(xs, ys):
            total = total + gaussian_irradiance(emitter, 1.0, np.hypot(x - xk, y - yk), z)
        return total

    value, _ = integrate_disk(f, (0.0, 0.0), r_p, spec)
    return value, False


def ptmax_array(array: ArraySpec, ctx: ExposureContext, spec: QuadratureSpec | None = None) -> SafetyResult:
    """Per-emitter P_t,max of an N x N array of identical Gaussian emitters.

    Each concentric i x i block is treated as one extended source of
    subtense 2 atan(((i-1) pitch + 2 w0) / (2 z_haz)); the block with the
    tightest per-emitter limit wins. i = 1 reuses the single-emitter result.
    """
    if array.per_emitter_combo is not None:
        raise ParameterError("multimode array emitters are not supported")
    emitter = array.emitter
    _require_same_wavelength(emitter, ctx)
    single = ptmax_single_mode(emitter, ctx)
    r_p = ctx.pupil_radius
    z = max(single.z_haz, MIN_EVALUATION_DISTANCE)
    best = _with_notes(single, "limiting block 1x1")
    best = SafetyResult(
        best.p_t_max, best.z_haz, best.alpha, best.eta_or_fraction, best.mpe,
        Method.ARRAY, r_p, 1, best.notes,
    )
    a_max = alpha_max(ctx.exposure_duration)
    for i in range(2, array.side_count + 1):
        raw = 2.0 * math.atan(((i - 1) * array.pitch + 2.0 * emitter.waist_radius) / (2.0 * z))
        alpha = min(max(raw, ALPHA_MIN), a_max)
        mpe = eye_mpe(ctx, alpha)
        frac, far = _subarray_fraction(emitter, i, array.pitch, r_p, z, spec)
        p = mpe.mpe * math.pi * r_p**2 / frac
        if p < best.p_t_max:
            notes = (
                f"limiting block {i}x{i}",
                f"z_haz = max(single-emitter z_haz, 0.1 m) = {z:.6g} m",
                "far-field i^2 shortcut" if far else "disk quadrature",
            )
            best = SafetyResult(p, z, alpha, frac / (i * i), mpe, Method.ARRAY, r_p, i * i, notes)
    return best


# --------------------------------------------------------------------------
# diffusers


def _diffuser_source_radius(spec: DiffuserSpec, beam: BeamParams) -> float:
    # the illuminated patch cannot be larger than the diffuser itself
    return min(spot_radius(beam, spec.collimating_focal_length), 0.5 * spec.diameter)


def ptmax_lambertian_diffuser(
    spec: DiffuserSpec, beam: BeamParams, ctx: ExposureContext, z_haz: float = MIN_EVALUATION_DISTANCE
) -> SafetyResult:
    if spec.kind is not DiffuserKind.LAMBERTIAN:
        raise ParameterError("diffuser is not Lambertian")
    _require_same_wavelength(beam, ctx)
    r_p = ctx.pupil_radius
    alpha = 2.0 * math.atan(_diffuser_source_radius(spec, beam) / z_haz)
    mpe = eye_mpe(ctx, alpha)
    psi = math.atan(r_p / z_haz)
    frac = -math.expm1((spec.lambertian_order + 1.0) * math.log(math.cos(psi)))
    p = mpe.mpe * math.pi * r_p**2 / frac
    return SafetyResult(p, z_haz, alpha, frac, mpe, Method.LAMBERTIAN_DIFFUSER, r_p)


def ptmax_uniform_diffuser(
    spec: DiffuserSpec, beam: BeamParams, ctx: ExposureContext, z_haz: float = MIN_EVALUATION_DISTANCE
) -> SafetyResult:
    """Uniform cone diffuser; the cone apex sits W(f)/tan(Theta_d/2) behind the diffuser."""
    if spec.kind is not DiffuserKind.UNIFORM:
        raise ParameterError("diffuser is not uniform")
    _require_same_wavelength(beam, ctx)
    r_p = ctx.pupil_radius
    w_f = _diffuser_source_radius(spec, beam)
    alpha = 2.0 * math.atan(w_f / z_haz)
    mpe = eye_mpe(ctx, alpha)
    z_apex = z_haz + w_f / math.tan(0.5 * spec.fwhm_angle)
    psi = math.atan(r_p / z_apex)
    frac = uniform_received_power(1.0, spec.fwhm_angle, psi)
    p = mpe.mpe * math.pi * r_p**2 / frac
    return SafetyResult(p, z_haz, alpha, frac, mpe, Method.UNIFORM_DIFFUSER, r_p, notes=(f"z' = {z_apex:.6g} m",))


# --------------------------------------------------------------------------
# skin


def ptmax_skin_gaussian(beam: BeamParams, shield: ShieldContext, ctx: ExposureContext) -> SafetyResult:
    """Skin-limited P_t,max of a Gaussian beam first accessible at the shield distance."""
    _require_same_wavelength(beam, ctx)
    z = shield.shield_distance
    w = spot_radius(beam, z)
    mpe = skin_mpe(ctx, shield.exposed_area(beam))
    r_a = 0.5 * skin_limiting_aperture(ctx)
    if w < r_a:
        # small beam: irradiance taken over the beam's own 1/e^2 area
        p = mpe.mpe * math.pi * w**2
        return SafetyResult(p, z, 0.0, 1.0, mpe, Method.SKIN_GAUSSIAN, w, notes=("beam smaller than aperture",))
    frac = -math.expm1(-2.0 * r_a**2 / w**2)
    p = mpe.mpe * math.pi * r_a**2 / frac
    return SafetyResult(p, z, 0.0, frac, mpe, Method.SKIN_GAUSSIAN, r_a)


def ptmax_skin_multimode(
    combo: ModeCombination,
    beam: BeamParams,
    shield: ShieldContext,
    ctx: ExposureContext,
    spec: QuadratureSpec | None = None,
) -> SafetyResult:
    """Skin-limited P_t,max from the peak-centred 3.5 mm aperture power of a multimode beam."""
    _require_same_wavelength(beam, ctx)
    z = shield.shield_distance
    w_r = combination_spot_radius(combo, beam, z)
    mpe = skin_mpe(ctx, math.pi * w_r**2)
    r_a = 0.5 * skin_limiting_aperture(ctx)
    peak = peak_irradiance_location(combo, beam, z)
    frac = power_through_disk(combo, beam, 1.0, (peak.x, peak.y), r_a, z, spec)
    p = mpe.mpe * math.pi * r_a**2 / frac
    return SafetyResult(p, z, 0.0, frac, mpe, Method.SKIN_MULTIMODE, r_a)


# --------------------------------------------------------------------------
# most hazardous position


def most_hazardous_position(
    irradiance_profile,
    z_upper: float,
    z_lower: float = MIN_EVALUATION_DISTANCE,
    points_per_decade: int = 200,
    refine_tol: float = 1e-9,
) -> float:
    """Distance in [z_lower, z_upper] maximising exposure / MPE.

    ``irradiance_profile(z)`` returns ``(exposure, mpe)``.
    """

    def ratio(z):
        exposure, mpe = irradiance_profile(z)
        return exposure / mpe

    return argmax_scan(ratio, z_lower, z_upper, points_per_decade, refine_tol)
