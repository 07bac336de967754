"""Skin-limited P_t,max at 1550 nm against shielding distance and divergence."""
import math

import numpy as np

from beamsafe import BeamParams, ExposureContext
from beamsafe.safety import ShieldContext, ptmax_skin_gaussian
from common import write_csv

LAM = 1550e-9


def main():
    ctx = ExposureContext(100.0, LAM)
    rows = []
    for theta in (0.5, 1.0, 2.0, 5.0, 10.0):
        beam = BeamParams(LAM, LAM / (math.pi * math.radians(theta)))
        for d_sh in np.linspace(0.0, 0.5, 51):
            res = ptmax_skin_gaussian(beam, ShieldContext(float(d_sh)), ctx)
            rows.append((theta, d_sh, res.p_t_max, res.mpe.branch_id))
    write_csv("skin_1550.csv", ("theta_deg", "d_sh_m", "p_t_max_W", "branch_id"), rows)


if __name__ == "__main__":
    main()
