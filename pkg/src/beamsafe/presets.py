"""Named Laguerre-Gaussian mode combinations for VCSEL-like multimode beams.

Each preset lists power fractions over the first six LG modes. The
tabulated divergence ratio theta_R/theta published alongside each preset
is kept as metadata; :func:`beamsafe.modes.combination_divergence_ratio`
recomputes it from the profile and does not always agree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .modes import Family, ModeCombination

__all__ = ["LG_BASIS", "Preset", "PRESETS", "get_preset", "preset_names"]

# mode order of the coefficient vectors: LG(l, m)
LG_BASIS = ((0, 0), (1, 0), (2, 0), (0, 1), (3, 0), (1, 1))


@dataclass(frozen=True)
class Preset:
    name: str
    coefficients: tuple
    tabulated_ratio: float

    @property
    def combination(self) -> ModeCombination:
        return ModeCombination.from_pairs(Family.LG, zip(LG_BASIS, self.coefficients))


_TABLE = (
    ("LG-Comb 1", (1.0, 0.0, 0.0, 0.0, 0.0, 0.0), 1.0),
    ("LG-Comb 2", (0.5, 0.5, 0.0, 0.0, 0.0, 0.0), 1.3248),
    ("LG-Comb 3", (0.0, 0.5, 0.25, 0.0, 0.25, 0.0), 1.7346),
    ("LG-Comb 4", (0.0, 0.0, 0.25, 0.25, 0.25, 0.25), 1.9451),
    ("LG-Comb 5", (0.125, 0.75, 0.0625, 0.0, 0.0625, 0.0), 1.5432),
    ("LG-Comb 6", (0.0, 0.125, 0.375, 0.0625, 0.375, 0.0625), 1.7511),
    ("LG-Comb 7", (0.06, 0.44, 0.22, 0.03, 0.22, 0.03), 1.7237),
)

PRESETS = {name: Preset(name, coeffs, ratio) for name, coeffs, ratio in _TABLE}


def preset_names():
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    key = " ".join(str(name).replace("_", " ").split()).lower()
    for preset_name, preset in PRESETS.items():
        if preset_name.lower() == key or preset_name.lower().replace(" ", "") == key.replace(" ", ""):
            return preset
    raise ConfigError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
