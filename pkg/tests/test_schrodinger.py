import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale import schrodinger as sch
from modscale.spectral import GridSpec, lp_norm, synthesize, zero
from modscale.weights import power_weight

SMALL = GridSpec(1, 5, 4)
SWEEP = GridSpec(1, 7, 3, 5, 1)
times = st.sampled_from([0.0, 0.125, 0.5, 1.0, -0.75, 2.0])


def test_trivial_cases(gaussian):
    assert sch.propagate(gaussian, 0.0) is gaussian
    assert sch.verify_z0(gaussian, 0.0, 0, (0,), grid=SMALL) == 0.0
    assert sch.verify_z0(zero(1), 1.0, 1, (0,), grid=SMALL) == 0.0
    lhs, rhs = sch.verify_z1(gaussian, 0.0, 4, 4, 0, grid=SMALL)
    assert lhs == rhs


def test_z1_examples(gaussian):
    for j in range(-2, 3):
        lhs, rhs = sch.verify_z1(gaussian, 1.0, 4, 4, j, grid=GridSpec(1, 6, 6))
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_sweep_trivial_rows(gaussian):
    rows = sch.envelope_sweep_z4(gaussian, 1, 2, [0, 1], [0.0], grid=SWEEP)
    assert all(r.ratio == pytest.approx(1.0, abs=1e-12) for r in rows)
    rows6 = sch.envelope_sweep_z6(gaussian, 4, 2, [0], [0.0], grid=SWEEP)
    assert 0 < rows6[0].ratio < math.inf
    with pytest.raises(ValueError):
        sch.envelope_sweep_z6(gaussian, 1.5, 2, [0], [1.0], grid=SWEEP)


def test_p2_ratio_bounded(gaussian):
    rows = sch.envelope_sweep_z4(gaussian, 2, 2, [0, 1, 2], [0.25, 1.0, 4.0], grid=SWEEP)
    assert sch.spread(rows) <= 2.0


def test_sweep_csv(gaussian):
    rows = sch.envelope_sweep_z4(gaussian, 1, 2, [0], [0.5, 1.0], grid=SWEEP)
    lines = sch.sweep_csv(rows).splitlines()
    assert lines[0] == "j,t,ratio,envelope,ratio_over_envelope"
    assert len(lines) == 3


def test_dispersive_grid_grows():
    g = sch.dispersive_grid(SMALL, 2, 1.0)
    assert 2.0 ** g.cell_exponent >= 16 * math.pi * 16 + 2 ** SMALL.cell_exponent
    assert sch.dispersive_grid(SMALL, 0, 0.0) == SMALL


def test_sigma_sweep_recorded_constant(gaussian):
    w = power_weight(1, -0.25, -0.25)
    rows = sch.sigma_sweep(gaussian, 4, 4, 4, w, [0.25, 1.0, 4.0], j_range=(-4, 2), grid=SMALL)
    c = max(r / env for _, r, env in rows)
    assert math.isfinite(c) and c > 0


def test_probe_preconditions(gaussian):
    with pytest.raises(ValueError):
        sch.strichartz_probe([gaussian], 4.0)
    with pytest.raises(ValueError):
        sch.strichartz_probe([gaussian], 2.5, q=4.0)


@given(st.integers(-2, 2), st.integers(-3, 3), times)
def test_z0_identity(j, k, t):
    g = synthesize("gaussian", 1)
    assert sch.verify_z0(g, t, j, (k,), grid=SMALL) <= 1e-8


@given(times, st.integers(0, 100))
def test_mass_conservation(t, s):
    f = synthesize("random-bandlimited", 1, seed=s)
    assert lp_norm(sch.propagate(f, t), 2, SMALL) == pytest.approx(lp_norm(f, 2, SMALL), rel=1e-12)


@given(times, times, st.floats(-3, 3))
def test_group_law(s, t, xi):
    g = synthesize("gaussian", 1)
    lhs = sch.propagate(sch.propagate(g, s), t)(xi)
    rhs = sch.propagate(g, s + t)(xi)
    assert abs(lhs - rhs) <= 1e-12


@given(times, st.floats(-3, 3))
def test_unitary_multiplier(t, xi):
    g = synthesize("gaussian", 1)
    assert abs(sch.propagate(g, t)(xi)) == pytest.approx(abs(g(xi)), rel=1e-14)
