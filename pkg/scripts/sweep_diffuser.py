"""P_t,max behind a collimating lens and diffuser against beam divergence.

diffuser_lambertian.csv: orders m and lens focal lengths f.
diffuser_uniform.csv: FWHM angles Theta_d and focal lengths f.
"""
import math

import numpy as np

from beamsafe import BeamParams, ExposureContext
from beamsafe.optics import DiffuserSpec
from beamsafe.safety import ptmax_lambertian_diffuser, ptmax_uniform_diffuser
from common import write_csv

LAM = 850e-9
D = 0.025
THETAS = np.linspace(1.0, 20.0, 39)
FOCALS = (1e-3, 5e-3, 10e-3)


def beam_for(theta_deg):
    return BeamParams(LAM, LAM / (math.pi * math.radians(theta_deg)))


def main():
    ctx = ExposureContext(100.0, LAM)
    rows = []
    for m in (1, 2, 5):
        for f in FOCALS:
            spec = DiffuserSpec("lambertian", D, f, lambertian_order=m)
            for th in THETAS:
                res = ptmax_lambertian_diffuser(spec, beam_for(th), ctx)
                rows.append((m, f, th, res.p_t_max, res.alpha))
    write_csv("diffuser_lambertian.csv", ("order_m", "f_m", "theta_deg", "p_t_max_W", "alpha_rad"), rows)

    rows = []
    for fwhm in (20.0, 50.0):
        for f in FOCALS:
            spec = DiffuserSpec("uniform", D, f, fwhm_angle=math.radians(fwhm))
            for th in THETAS:
                res = ptmax_uniform_diffuser(spec, beam_for(th), ctx)
                rows.append((fwhm, f, th, res.p_t_max, res.alpha))
    write_csv("diffuser_uniform.csv", ("fwhm_deg", "f_m", "theta_deg", "p_t_max_W", "alpha_rad"), rows)


if __name__ == "__main__":
    main()
