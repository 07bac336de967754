"""Maximum permissible exposure for the eye (700-1400 nm) and skin (1400 nm-100 um).

Angles are handled in radians everywhere except inside the T2 exponent,
which is defined in milliradians. Duration branches are lower-inclusive and
upper-exclusive, except that the final column includes 3e4 s.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ParameterError, UnsupportedDomainError

__all__ = [
    "ALPHA_MIN",
    "T_MIN",
    "T_MAX",
    "SourceClass",
    "ExposureContext",
    "SourceExtent",
    "MpeResult",
    "subtense_angle",
    "alpha_max",
    "classify_source",
    "c4",
    "c6",
    "c7",
    "t2",
    "eye_mpe",
    "skin_mpe",
    "skin_limiting_aperture",
    "eye_limiting_aperture",
    "EYE_BRANCH_IDS",
    "SKIN_BRANCH_IDS",
]

ALPHA_MIN = 1.5e-3
T_MIN = 1e-3
T_MAX = 3e4
T_LONG = 10.0
_EYE_BAND = (700e-9, 1400e-9)
_EYE_SPLIT = 1050e-9
_SKIN_BAND = (1400e-9, 1e-4)
_SKIN_SPLIT = 1500e-9
_SKIN_SHORT = 0.35
_SKIN_AREAS = (0.01, 0.1)
_DEFAULT_PUPIL_RADIUS = 3.5e-3


class SourceClass(str, enum.Enum):
    POINT = "point"
    INTERMEDIATE = "intermediate"
    LARGE = "large"


@dataclass(frozen=True)
class ExposureContext:
    """Exposure duration [s], wavelength [m] and pupil radius [m]."""

    exposure_duration: float
    wavelength: float
    pupil_radius: float = _DEFAULT_PUPIL_RADIUS

    def __post_init__(self):
        t = self.exposure_duration
        if not (T_MIN <= t <= T_MAX):
            bound = "t_ex >= 1e-3 s" if not t >= T_MIN else "t_ex <= 3e4 s"
            raise UnsupportedDomainError(f"exposure duration {t} s outside [1e-3, 3e4] s", bound=bound)
        if not self.wavelength > 0:
            raise ParameterError("wavelength must be > 0")
        if not self.pupil_radius > 0:
            raise ParameterError("pupil_radius must be > 0")

    def with_duration(self, t: float) -> "ExposureContext":
        return ExposureContext(t, self.wavelength, self.pupil_radius)

    def with_wavelength(self, wavelength: float) -> "ExposureContext":
        return ExposureContext(self.exposure_duration, wavelength, self.pupil_radius)


@dataclass(frozen=True)
class SourceExtent:
    alpha: float
    source_class: SourceClass


@dataclass(frozen=True)
class MpeResult:
    """An exposure limit [W/m^2] with the coefficients that produced it.

    Coefficients that do not enter a skin limit are reported as 1 (C4, C6,
    C7) and 10 s (T2) so the invariant ranges hold for every result.
    """

    mpe: float
    c4: float
    c6: float
    c7: float
    t2: float
    source_class: SourceClass | None
    branch_id: str


def subtense_angle(source_diameter: float, distance: float) -> float:
    """Full angle 2 atan(D / 2z) subtended by a source of diameter D at distance z."""
    if not distance > 0:
        raise ParameterError("distance must be > 0")
    if source_diameter < 0:
        raise ParameterError("source diameter must be >= 0")
    return 2.0 * math.atan(source_diameter / (2.0 * distance))


def alpha_max(t_ex: float) -> float:
    """Upper subtense limit [rad]: 200 sqrt(t) mrad below 0.25 s, else 100 mrad."""
    if t_ex < 0.25:
        return 0.2 * math.sqrt(t_ex)
    return 0.1


def classify_source(alpha: float, t_ex: float) -> SourceExtent:
    if alpha <= ALPHA_MIN:
        cls = SourceClass.POINT
    elif alpha >= alpha_max(t_ex):
        cls = SourceClass.LARGE
    else:
        cls = SourceClass.INTERMEDIATE
    return SourceExtent(alpha, cls)


def _check_eye_band(wavelength):
    lo, hi = _EYE_BAND
    if wavelength < lo:
        raise UnsupportedDomainError(f"wavelength {wavelength * 1e9:.6g} nm below 700 nm", bound="lambda >= 700 nm")
    if wavelength >= hi:
        raise UnsupportedDomainError(f"wavelength {wavelength * 1e9:.6g} nm not below 1400 nm", bound="lambda < 1400 nm")


def c4(wavelength: float) -> float:
    _check_eye_band(wavelength)
    if wavelength < _EYE_SPLIT:
        return 10.0 ** (0.002 * (wavelength * 1e9 - 700.0))
    return 5.0


def c7(wavelength: float) -> float:
    _check_eye_band(wavelength)
    nm = wavelength * 1e9
    if nm < 1150.0:
        return 1.0
    if nm < 1200.0:
        return 10.0 ** (0.018 * (nm - 1150.0))
    return 8.0


def c6(alpha: float, t_ex: float) -> float:
    a_max = alpha_max(t_ex)
    return min(max(alpha, ALPHA_MIN), a_max) / ALPHA_MIN


def t2(alpha: float, t_ex: float) -> float:
    if alpha <= ALPHA_MIN:
        return 10.0
    if alpha > alpha_max(t_ex):
        return 100.0
    return 10.0 * 10.0 ** ((alpha - ALPHA_MIN) * 1e3 / 98.5)


def eye_mpe(ctx: ExposureContext, alpha: float) -> MpeResult:
    """Retinal MPE for 700 nm <= lambda < 1400 nm.

    Raises
    ------
    UnsupportedDomainError
        Wavelength outside the tabulated band.
    """
    if alpha < 0:
        raise ParameterError("alpha must be >= 0")
    lam, t = ctx.wavelength, ctx.exposure_duration
    k4, k7 = c4(lam), c7(lam)
    k6, tt2 = c6(alpha, t), t2(alpha, t)
    extent = classify_source(alpha, t)
    low_band = lam < _EYE_SPLIT
    band = "700-1050" if low_band else "1050-1400"

    if extent.source_class is SourceClass.POINT:
        if t < T_LONG:
            mpe = (18.0 * k4 if low_band else 90.0) * t**-0.25
            branch = f"eye.point.{band}.short"
        else:
            mpe = 10.0 * k4 * k7
            branch = f"eye.point.{band}.long"
    else:
        scale = 18.0 * k4 * k6 if low_band else 90.0 * k6 * k7
        if t <= tt2:
            mpe = scale * t**-0.25
            branch = f"eye.extended.{band}.t_le_t2"
        else:
            mpe = scale * tt2**-0.25
            branch = f"eye.extended.{band}.t_gt_t2"
    return MpeResult(mpe, k4, k6, k7, tt2, extent.source_class, branch)


EYE_BRANCH_IDS = tuple(
    f"eye.{kind}.{band}.{col}"
    for band in ("700-1050", "1050-1400")
    for kind, cols in (("point", ("short", "long")), ("extended", ("t_le_t2", "t_gt_t2")))
    for col in cols
)


def _skin_time_column(t):
    if t < _SKIN_SHORT:
        return "short"
    if t < T_LONG:
        return "mid"
    return "long"


def _skin_area_row(area):
    if area <= _SKIN_AREAS[0]:
        return "small"
    if area <= _SKIN_AREAS[1]:
        return "medium"
    return "large"


def skin_mpe(ctx: ExposureContext, exposed_area: float) -> MpeResult:
    """Skin MPE for 1400 nm <= lambda < 100 um, by duration and exposed area [m^2]."""
    lam, t = ctx.wavelength, ctx.exposure_duration
    lo, hi = _SKIN_BAND
    if lam < lo:
        raise UnsupportedDomainError(
            f"wavelength {lam * 1e9:.6g} nm below 1400 nm; eye limits govern", bound="lambda >= 1400 nm"
        )
    if lam >= hi:
        raise UnsupportedDomainError(f"wavelength {lam * 1e9:.6g} nm not below 1e5 nm", bound="lambda < 1e5 nm")
    if not exposed_area > 0:
        raise ParameterError("exposed area must be > 0")

    col = _skin_time_column(t)
    row = _skin_area_row(exposed_area)
    low_band = lam < _SKIN_SPLIT
    band = "1400-1500" if low_band else "1500-100000"
    if col == "long":
        mpe = {"small": 1000.0, "medium": 10.0 / exposed_area, "large": 100.0}[row]
    elif low_band:
        f = t**-0.75
        mpe = {"small": 5600.0 * f, "medium": 56.0 * f / exposed_area, "large": 560.0 * f}[row]
    else:
        mpe = {"small": 1e4 / t, "medium": 1e2 / (t * exposed_area), "large": 1e3 / t}[row]
    return MpeResult(mpe, 1.0, 1.0, 1.0, 10.0, None, f"skin.{band}.{col}.{row}")


SKIN_BRANCH_IDS = tuple(
    f"skin.{band}.{col}.{row}"
    for band in ("1400-1500", "1500-100000")
    for col in ("short", "mid", "long")
    for row in ("small", "medium", "large")
)


def skin_limiting_aperture(ctx: ExposureContext) -> float:
    """Limiting aperture diameter [m] for skin: 3.5 mm at every tabulated duration."""
    return 3.5e-3


def eye_limiting_aperture(ctx: ExposureContext) -> float:
    """Eye row of the far-infrared aperture table, diameter [m]."""
    t = ctx.exposure_duration
    if t < _SKIN_SHORT:
        return 1e-3
    if t < T_LONG:
        return 1.5e-3 * t ** 0.375
    return 3.5e-3
