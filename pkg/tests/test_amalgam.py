import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale import amalgam
from modscale.norms import NormSpec, frak_norm
from modscale.spectral import GridSpec, dilate_dyadic, synthesize, zero
from modscale.weights import conjugate_exponent, fx_weight, power_weight, weight_w_p
from reference import FAMALGAM44_GAUSSIAN_J0

SMALL = GridSpec(1, 5, 4)
seeds = st.integers(0, 200)


def test_famalgam_reference(gaussian):
    v = amalgam.famalgam_norm(gaussian, 4, 4, 0, grid=GridSpec(1, 6, 6))
    assert abs(v / FAMALGAM44_GAUSSIAN_J0 - 1) <= 1e-4


def test_zero_inputs():
    z = zero(1)
    assert amalgam.famalgam_norm(z, 2, 2) == 0.0
    assert amalgam.frak_famalgam_norm(z, 2, 2, 2, power_weight(1, -0.25, 0.25), (-2, 2)).value == 0.0
    assert amalgam.fx_norm(z, 4, 4, (-2, 2)) == 0.0
    assert amalgam.hausdorff_young_cell_check(z, 4, 0, 0) == (0.0, 0.0)
    assert amalgam.wiener_amalgam_norm(z, 2, 2) == 0.0


def test_fx_rejects_p1(gaussian):
    with pytest.raises(ValueError):
        amalgam.fx_norm(gaussian, 1, 2)


def test_hausdorff_young_direction(gaussian):
    with pytest.raises(ValueError):
        amalgam.hausdorff_young_scale(gaussian, 1.5, 0)
    lhs, rhs = amalgam.hausdorff_young_cell_check(gaussian, 4, 0, 1, grid=SMALL)
    assert 0 < lhs <= rhs


def test_wiener_windows_of_spatial_bump():
    f = synthesize("spatial-bump", 1)
    ks, vals = amalgam.wiener_window_norms(f, 2, grid=GridSpec(1, 4, 5))
    live = ks[vals > 1e-8 * vals.max(), 0]
    assert set(live.tolist()) <= {-1, 0, 1}


@given(seeds, st.integers(-2, 2), st.sampled_from([2.5, 4.0, 6.0]))
def test_hausdorff_young_cells(s, j, p):
    f = synthesize("random-bandlimited", 1, seed=s)
    _, lhs, rhs = amalgam.hausdorff_young_scale(f, p, j, grid=SMALL)
    assert np.all(lhs <= rhs + 1e-12)


@given(seeds, st.integers(-2, 2))
def test_plancherel_cells(s, j):
    f = synthesize("random-bandlimited", 1, seed=s)
    _, lhs, rhs = amalgam.hausdorff_young_scale(f, 2, j, grid=SMALL)
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-10 * rhs.max())


@given(seeds, st.sampled_from([(4, 4), (3, 4), (6, 3)]))
def test_embedding_into_fx(s, pq):
    p, q = pq
    f = synthesize("random-bandlimited", 1, seed=s)
    jr = (-4, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        m = frak_norm(f, NormSpec(p, q, q, weight_w_p(p), *jr), grid=SMALL).value
    fx = amalgam.fx_norm(f, p, q, jr, grid=SMALL)
    assert m <= fx + 1e-10
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        via = amalgam.frak_famalgam_norm(f, conjugate_exponent(p), q, q, fx_weight(p), jr, grid=SMALL).value
    assert via == pytest.approx(fx, rel=1e-12)


@given(st.integers(-3, 3))
def test_fx_scaling(j0):
    g = synthesize("gaussian", 1)
    jr = (-4, 4)
    base = amalgam.fx_norm(g, 4, 4, jr, grid=SMALL)
    lhs = amalgam.fx_norm(dilate_dyadic(g, j0), 4, 4, (jr[0] + j0, jr[1] + j0), grid=SMALL.dilated(j0))
    assert lhs == pytest.approx(2.0 ** (-j0 / 2) * base, rel=1e-10)


@given(seeds, st.floats(1, 4), st.floats(1, 4))
def test_wiener_monotone_in_q(s, q1, q2):
    f = synthesize("random-bandlimited", 1, seed=s)
    lo, hi = sorted((q1, q2))
    grid = GridSpec(1, 4, 4)
    assert amalgam.wiener_amalgam_norm(f, 2, hi, grid=grid) <= amalgam.wiener_amalgam_norm(f, 2, lo, grid=grid) * (1 + 1e-12)
