"""Compare the preset divergence ratios and LG spot radii with their tabulated values."""
from beamsafe import BeamParams
from beamsafe.gaussian_beam import spot_radius
from beamsafe.modes import ModeIndex, combination_divergence_ratio, mode_spot_radius
from beamsafe.presets import LG_BASIS, PRESETS
from common import write_csv

SPOT_TABLE = dict(zip(LG_BASIS[1:], (1.500, 1.774, 1.502, 1.999, 2.008)))


def main():
    beam = BeamParams(850e-9, 5e-6)
    rows = []
    for name, p in PRESETS.items():
        got = combination_divergence_ratio(p.combination, beam)
        rows.append((name, p.tabulated_ratio, got, got - p.tabulated_ratio))
        print(f"{name:10s} ratio tabulated {p.tabulated_ratio:.3f} computed {got:.5f}")
    write_csv("preset_ratios.csv", ("preset", "tabulated", "computed", "difference"), rows)

    z = 0.1
    w = spot_radius(beam, z)
    rows = []
    for (l, m), want in SPOT_TABLE.items():
        got = mode_spot_radius(ModeIndex("LG", l, m), beam, z) / w
        rows.append((f"LG({l},{m})", want, got, got - want))
        print(f"LG({l},{m}) spot/W tabulated {want:.3f} computed {got:.5f}")
    write_csv("lg_spot_radii.csv", ("mode", "tabulated", "computed", "difference"), rows)


if __name__ == "__main__":
    main()
