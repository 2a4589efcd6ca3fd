import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale.spectral import (Box, GridSpec, apply_multiplier, delta_op, dilate_dyadic, frequency_l2_sq,
                               japanese_bracket, lp_norm, sample_frequency, spatial_samples, synthesize,
                               zero)
from reference import LP1_GAUSSIAN, LP2_GAUSSIAN

xi_values = st.floats(-8, 8, allow_nan=False)


def test_gaussian_at_origin():
    assert synthesize("gaussian", 1)(0.0) == pytest.approx(1.0, abs=0)


def test_counterexample_value():
    # r^{-1/2} |ln r|^{-1/2} at r = 1/4
    want = 2.0 * (2.0 * math.log(2.0)) ** -0.5
    assert abs(synthesize("counterexample-g", 1)(0.25) - want) < 1e-12
    assert want == pytest.approx(1.6986, abs=1e-4)


def test_cube_indicator_outside_support():
    assert synthesize("cube-indicator", 1, lo=-0.5, hi=0.5)(0.7) == 0


def test_unknown_kind():
    with pytest.raises(ValueError):
        synthesize("nope", 1)


def test_lp_norms_of_gaussian():
    g = synthesize("gaussian", 1)
    grid = GridSpec(1, 6, 6)
    assert abs(lp_norm(g, 2, grid) - LP2_GAUSSIAN) < 1e-8
    assert abs(lp_norm(g, 1, grid) - LP1_GAUSSIAN) < 1e-8
    assert lp_norm(zero(1), 3, grid) == 0.0


def test_lp_rejects_small_p():
    with pytest.raises(ValueError):
        lp_norm(synthesize("gaussian", 1), 0.5, GridSpec(1, 4, 4))


def test_spatial_sample_phase():
    grid = GridSpec(1, 5, 5)
    vals = spatial_samples(synthesize("gaussian", 1), grid)
    mid = grid.N // 2
    assert grid.space_axis()[mid] == 0.0
    assert abs(vals[mid] - 1.0) < 1e-12


def test_plancherel_on_lattice():
    f = synthesize("random-bandlimited", 1, seed=3)
    grid = GridSpec(1, 5, 5)
    assert lp_norm(f, 2, grid) ** 2 == pytest.approx(frequency_l2_sq(f, grid), rel=1e-12)


def test_dilation_examples():
    g = synthesize("gaussian", 1)
    assert dilate_dyadic(g, 0) is g
    assert abs(dilate_dyadic(g, 1)(2.0) - 0.5 * math.exp(-math.pi)) < 1e-15
    assert delta_op(g, 0) is g
    assert abs(delta_op(g, 1)(1.0) - math.exp(-4 * math.pi)) < 1e-15


def test_multiplier_examples():
    g = synthesize("gaussian", 1)
    xi = np.linspace(-3, 3, 11)
    np.testing.assert_array_equal(apply_multiplier(g, 1.0)(xi), g(xi))
    assert apply_multiplier(g, 0.0).is_zero
    m = apply_multiplier(g, lambda x: x[..., 0])
    assert abs(m(2.0) - 2.0 * math.exp(-4 * math.pi)) < 1e-15


def test_grid_guard_and_geometry():
    with pytest.raises(ValueError):
        GridSpec(1, 13, 13)
    grid = GridSpec(1, 6, 6)
    assert grid.N == 8192
    assert grid.dxi * grid.N * grid.dx == pytest.approx(1.0)
    assert grid.dilated(2) == GridSpec(1, 4, 8)
    assert grid.rescaled(2) == grid.dilated(-2)


def test_sample_shape_d2():
    grid = GridSpec(2, 3, 2)
    assert sample_frequency(synthesize("gaussian", 2), grid).shape == (grid.N, grid.N)


@given(xi_values, st.integers(-4, 4))
def test_dilation_inverts_delta(x, j):
    # delta_j composed with the dilation by j is 2^{-jd} times the identity
    g = synthesize("gaussian", 1)
    lhs = delta_op(dilate_dyadic(g, j), j)(x)
    assert abs(lhs - 2.0 ** (-j) * g(x)) <= 1e-15 * (1 + abs(lhs))


@given(st.integers(0, 40), st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       xi_values)
def test_linear_structure(seed, c, x):
    f = synthesize("random-bandlimited", 1, seed=seed)
    g = synthesize("gaussian", 1)
    assert abs((f + c * g)(x) - (f(x) + c * g(x))) <= 1e-12 * (1 + abs(f(x)) + abs(c))
    assert abs((f - f)(x)) <= 1e-15 * (1 + abs(f(x)))


@given(st.floats(-1e3, 1e3, allow_nan=False))
def test_japanese_bracket(x):
    b = japanese_bracket(x)
    assert b >= 1.0 and b >= abs(x)
    assert b == pytest.approx(math.sqrt(1 + x * x))


@given(st.floats(-5, 5), st.floats(0.01, 5), st.floats(-5, 5), st.floats(0.01, 5))
def test_box_intersection_is_contained(lo1, w1, lo2, w2):
    a = Box((lo1,), (lo1 + w1,))
    b = Box((lo2,), (lo2 + w2,))
    c = a.intersect(b)
    if not c.is_empty():
        assert c.lo[0] >= max(lo1, lo2) and c.hi[0] <= min(lo1 + w1, lo2 + w2)
    h = a.hull(b)
    assert h.lo[0] <= min(lo1, lo2) and h.hi[0] >= max(lo1 + w1, lo2 + w2)


@given(st.integers(-3, 3), st.sampled_from([1.0, 2.0, 4.0]))
def test_lp_scaling_exact_on_corresponding_grids(j0, p):
    g = synthesize("gaussian", 1)
    grid = GridSpec(1, 5, 5)
    lhs = lp_norm(dilate_dyadic(g, j0), p, grid.dilated(j0))
    assert lhs == pytest.approx(2.0 ** (-j0 / p) * lp_norm(g, p, grid), rel=1e-12)
