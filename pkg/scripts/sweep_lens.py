"""P_t,max with a thin lens in front of the source.

lens_t_ex.csv and lens_wavelength.csv vary t_ex and lambda for several
lens-to-source distances d1 at f = 4 cm; lens_f_d1.csv is the (f, d1) grid.
"""
import numpy as np

from beamsafe import BeamParams, ExposureContext
from beamsafe.errors import BeamsafeError
from beamsafe.optics import ThinLensSpec
from beamsafe.safety import ptmax_with_lens
from common import logspace, write_csv

W0 = 5e-6
D1 = (0.02, 0.04, 0.06, 0.08)


def p(lam, t, f, d1):
    try:
        res = ptmax_with_lens(BeamParams(lam, W0), ThinLensSpec(f, d1), ExposureContext(t, lam))
    except BeamsafeError as exc:
        return float("nan"), type(exc).__name__
    return res.p_t_max, ""


def main():
    rows = [(d1, t, *p(850e-9, t, 0.04, d1)) for d1 in D1 for t in logspace(1e-3, 3e4, 57)]
    write_csv("lens_t_ex.csv", ("d1_m", "t_ex_s", "p_t_max_W", "error"), rows)

    rows = [(d1, nm, *p(nm * 1e-9, 100.0, 0.04, d1)) for d1 in D1 for nm in np.arange(700.0, 1400.0, 10.0)]
    write_csv("lens_wavelength.csv", ("d1_m", "wavelength_nm", "p_t_max_W", "error"), rows)

    rows = [
        (f, d1, *p(850e-9, 100.0, f, d1))
        for f in np.linspace(0.005, 0.1, 20)
        for d1 in np.linspace(0.0, 0.2, 41)
    ]
    write_csv("lens_f_d1.csv", ("f_m", "d1_m", "p_t_max_W", "error"), rows)


if __name__ == "__main__":
    main()
