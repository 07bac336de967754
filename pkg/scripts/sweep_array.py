"""Per-emitter P_t,max of N x N VCSEL arrays against pitch."""
from beamsafe import BeamParams, ExposureContext
from beamsafe.safety import ArraySpec, ptmax_array, ptmax_single_mode
from common import write_csv

import numpy as np


def main():
    beam = BeamParams(850e-9, 5e-6)
    ctx = ExposureContext(100.0, 850e-9)
    single = ptmax_single_mode(beam, ctx).p_t_max
    rows = []
    for n in (2, 3, 5, 10):
        for pitch in np.concatenate(([0.0], np.linspace(10e-6, 500e-6, 50))):
            res = ptmax_array(ArraySpec(n, float(pitch), beam), ctx)
            rows.append((n, pitch, res.p_t_max, res.p_t_max / single, res.sources_in_pupil, res.alpha))
    write_csv("array_pitch.csv", ("n", "pitch_m", "p_t_max_W", "ratio_to_single", "limiting_block_size", "alpha_rad"), rows)


if __name__ == "__main__":
    main()
