import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale.partition import (FrequencyCell, PartitionOfUnity, build_pou, eval_cell, project_cell, rho,
                                validate_pou, window_1d)
from modscale.spectral import GridSpec, synthesize, zero

unit = st.floats(-0.5, 1.5, allow_nan=False)


def test_window_examples():
    pou = build_pou(1)
    assert pou.psi(0.0) == 1.0
    assert pou.psi(1.0) == 0.0 and pou.psi(-1.3) == 0.0
    s = sum(pou.psi1(0.37 - k) for k in range(-2, 3))
    assert abs(s - 1.0) <= 1e-12
    pou2 = build_pou(2)
    assert pou2.psi(np.array([0.2, 1.0])) == 0.0


def test_cell_examples():
    pou = build_pou(1)
    assert eval_cell(pou, FrequencyCell(0, (0,)), 0.0) == 1.0
    assert eval_cell(pou, FrequencyCell(-2, (5,)), 5 * 0.25) == 1.0
    assert FrequencyCell(-1, (3,)).box().lo == (1.0,)


def test_validate_pou_and_control():
    assert validate_pou(build_pou(1), GridSpec(1, 8, 4)) <= 1e-12
    assert validate_pou(build_pou(2), GridSpec(2, 6, 3)) <= 1e-12
    bad = PartitionOfUnity(1, generator=lambda t: rho(t) ** 2)
    # at xi = 1/2 the two active windows are rho(1/2)^2 each: total 1/2
    assert validate_pou(bad, GridSpec(1, 8, 4)) > 0.1
    assert not bad.is_standard


def test_project_zero_and_outside():
    pou = build_pou(1)
    cell = FrequencyCell(1, (2,))
    assert project_cell(zero(1), pou, cell).is_zero
    p = project_cell(synthesize("gaussian", 1), pou, cell)
    assert p(0.5) == 0 and p(7.0) == 0


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        project_cell(synthesize("gaussian", 2), build_pou(1), FrequencyCell(0, (0,)))


@given(unit)
def test_rho_complement(t):
    assert abs(rho(t) + rho(1.0 - t) - 1.0) <= 1e-15


@given(unit, unit)
def test_rho_monotone_and_bounded(s, t):
    lo, hi = min(s, t), max(s, t)
    assert 0.0 <= rho(lo) <= rho(hi) <= 1.0


@given(st.floats(-50, 50, allow_nan=False))
def test_window_even_and_partition(u):
    assert window_1d(u) == window_1d(-u)
    k0 = np.floor(u)
    assert abs(window_1d(u - k0) + window_1d(u - k0 - 1) - 1.0) <= 1e-15


@given(st.integers(-6, 6), st.integers(-20, 20), st.floats(-1, 1))
def test_cell_dilation(j, k, u):
    pou = build_pou(1)
    xi = 2.0 ** j * (k + u)
    a = eval_cell(pou, FrequencyCell(j, (k,)), xi)
    b = eval_cell(pou, FrequencyCell(0, (k,)), 2.0 ** -j * xi)
    assert abs(a - b) <= 1e-15


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_partition_d2(x, y):
    pou = build_pou(2)
    xi = np.array([x, y])
    total = sum(pou.psi(xi - np.array([a, b])) for a in range(-6, 7) for b in range(-6, 7))
    assert abs(total - 1.0) <= 1e-14
