"""Exploratory space-time probe: ||S(t) f||_{L^6_{t,x}} against the FX norm
and the weighted modulation norm, over a small family (no acceptance claim).

    python scripts/strichartz_probe.py --p 2.5 --count 8 --out results/probe.csv
"""
import argparse
from pathlib import Path

import numpy as np

from modscale import schrodinger as sch
from modscale.checks import random_family
from modscale.spectral import GridSpec, synthesize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=float, default=2.5)
    ap.add_argument("--count", type=int, default=8)
    ap.add_argument("--steps", type=int, default=64)
    ap.add_argument("--T", type=float, default=1.0)
    ap.add_argument("--out", default="results/probe.csv")
    args = ap.parse_args()

    # compactly supported spectra only; spatial-bump would fill every cell up to j_max
    fams = [synthesize("gaussian", 1)] + random_family(args.count - 1)
    rows = sch.strichartz_probe(fams, args.p, 6.0, args.T, args.steps, (-8, 4), grid=GridSpec(1, 6, 6))
    lines = ["name,spacetime,fx,frak,over_fx,over_frak"]
    lines += [f"{r.name},{r.spacetime!r},{r.fx!r},{r.frak!r},{r.over_fx!r},{r.over_frak!r}" for r in rows]
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    for key in ("over_fx", "over_frak"):
        v = np.array([getattr(r, key) for r in rows])
        print(f"{key}: min {v.min():.4g} max {v.max():.4g} max/min {v.max() / v.min():.3g}")


if __name__ == "__main__":
    main()
