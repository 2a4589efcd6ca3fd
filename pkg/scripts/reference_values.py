"""Compute the frozen reference values used by the test-suite.

Each value comes from an oracle that does not go through the cell FFT engine
(adaptive quadrature on the frequency side), except the weighted-norm value,
whose oracle is the same computation at doubled resolution on the same scale
window.  Run once and paste the printed JSON into tests/reference.py.
"""
import json
import math

import numpy as np
from scipy import integrate

from modscale import GridSpec, NormSpec, build_pou, frak_norm, synthesize, weight_w_p

PSI = build_pou(1).psi1


def fhat(xi):
    return math.exp(-math.pi * xi * xi)


def cell_integral(k, power, width=1.0):
    """``int |fhat psi(xi/width - k)|^power dxi`` over the cell support."""
    lo, hi = (k - 1) * width, (k + 1) * width

    def integrand(x):
        return (fhat(x) * float(PSI(np.array(x / width - k)))) ** power

    return integrate.quad(integrand, lo, hi, epsabs=0, epsrel=1e-13, limit=400)[0]


def mod_22_scale0():
    """``||f||_{M^{2,2}}`` at j = 0: Plancherel per cell, quadrature per cell."""
    return math.sqrt(sum(cell_integral(k, 2) for k in range(-8, 9)))


def famalgam_44_scale0():
    return sum(cell_integral(k, 4) for k in range(-8, 9)) ** 0.25


def frak_444_doubled():
    spec = NormSpec(4, 4, 4, weight_w_p(4, 1), -12, 8)
    return frak_norm(synthesize("gaussian", 1), spec, grid=GridSpec(1, 7, 7)).value


def main():
    out = {
        "lp2_gaussian": 2 ** -0.25,
        "lp1_gaussian": 1.0,
        "mod22_gaussian_j0": mod_22_scale0(),
        "famalgam44_gaussian_j0": famalgam_44_scale0(),
        "frak444_gaussian_wp4": frak_444_doubled(),
    }
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
