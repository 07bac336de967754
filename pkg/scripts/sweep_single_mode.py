"""Single-mode P_t,max against exposure duration, divergence and wavelength.

Writes single_mode_t_ex.csv, single_mode_divergence.csv and
single_mode_wavelength.csv. All three use the CLI sweep machinery.
"""
import numpy as np

from beamsafe.cli import run_sweep
from beamsafe.config import apply_axis, load_config
from common import CONFIGS, logspace, write_csv

COLS = ("axis_value", "p_t_max_W", "z_haz_m", "alpha_rad", "mpe_W_m2", "branch_id", "error")


def sweep(cfg, axis, values, label):
    return [(label, *[r.get(c, "") for c in COLS]) for r in run_sweep(cfg, axis, list(values), workers=4)]


def main():
    base = load_config(CONFIGS / "single_850.json")
    rows = []
    for nm in (850.0, 950.0):
        cfg = apply_axis(base, "wavelength", nm)
        rows += sweep(cfg, "t_ex", logspace(1e-3, 3e4, 141), f"{nm:g} nm")
    write_csv("single_mode_t_ex.csv", ("series",) + COLS, rows)

    rows = sweep(base, "divergence", np.linspace(0.1, 10.0, 199), "850 nm")
    write_csv("single_mode_divergence.csv", ("series",) + COLS, rows)

    rows = sweep(base, "wavelength", np.linspace(700.0, 1399.0, 141), "w0 5 um")
    write_csv("single_mode_wavelength.csv", ("series",) + COLS, rows)


if __name__ == "__main__":
    main()
