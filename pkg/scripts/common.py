"""Shared helpers for the sweep scripts: output folder and CSV writing."""
import csv
import os
from pathlib import Path

import numpy as np

OUT = Path(os.environ.get("BEAMSAFE_OUT", Path(__file__).resolve().parent / "out"))
CONFIGS = Path(__file__).resolve().parent / "configs"


def write_csv(name, header, rows):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    print(f"wrote {path} ({len(rows)} rows)")
    return path


def logspace(lo, hi, n):
    v = np.logspace(np.log10(lo), np.log10(hi), n)
    v[0], v[-1] = lo, hi
    return v
