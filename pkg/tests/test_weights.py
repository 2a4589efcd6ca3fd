import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale.weights import (VectorWeight, conjugate_exponent, fx_weight, is_good, is_good_amalgam,
                              is_multiplicative, morrey_weights, parse_weight, power_weight, shift,
                              sigma_weight, tabulated, weight_p_p0, weight_w_p)

betas = st.floats(-2, 2, allow_nan=False)
scales = st.integers(-30, 30)


def test_power_weight_examples():
    assert power_weight(1, 0, 0)(17) == 1.0
    assert power_weight(1, -0.25, -0.25)(4) == 0.5
    assert power_weight(2, 1, -1)(-3) == 16.0


def test_named_weights():
    w = weight_w_p(4, 1)
    assert w.beta_plus == w.beta_minus == pytest.approx(-0.25)
    assert is_multiplicative(w)
    g = is_good(w, 4, 4, 1)
    assert g.good and g.margin == pytest.approx(0.25)
    assert weight_p_p0(4, 3, 2, 1).beta_plus == pytest.approx(-1.0 / 12.0)
    assert is_good(weight_p_p0(4, 3, 2, 1), 4, 2, 1).good
    with pytest.raises(ValueError):
        weight_p_p0(2, 3, 2, 1)
    with pytest.raises(ValueError):
        weight_w_p(2, 1)
    assert morrey_weights(2, 4, 1)[0].beta_plus == pytest.approx(-0.25)
    assert morrey_weights(3, 3, 1)[0](5) == 1.0


def test_goodness_edges():
    assert not is_good(power_weight(1, 0, 0), 4, 4).good
    # exact threshold beta_- = d/q - d/p'
    thr = 1 / 4 - 3 / 4
    assert not is_good(power_weight(1, -1, thr), 4, 4).good
    assert not is_good_amalgam(power_weight(1, 0, 0), 4, 4).good
    assert not is_good_amalgam(power_weight(1, -1, 0.0), 4, 4).good


def test_amalgam_weight_is_good():
    # beta = d(p - 2)/(2p) on the Fourier side for the L^2-scaling amalgam
    w = fx_weight(4.0 / 3.0, 1)
    assert w.beta_plus == pytest.approx(0.25)
    assert not is_good_amalgam(w, 4, 4).good   # grows as j -> +inf
    w2 = power_weight(1, -0.25, 0.25)
    assert is_good_amalgam(w2, 4, 4).good


def test_sigma_weight():
    w = power_weight(1, -0.25, -0.25)
    assert sigma_weight(w, 2) == w
    s = sigma_weight(w, 4, 1)
    assert s.beta_plus == pytest.approx(-0.75) and s.beta_minus == pytest.approx(-0.25)
    moved = sigma_weight(shift(w, 3), 4, 1)
    assert moved.kind == "tabulated"
    assert moved(5) == pytest.approx(shift(w, 3)(5) * 2.0 ** -2.5)


def test_multiplicative_examples():
    assert not is_multiplicative(power_weight(1, -1, 1))
    assert not is_multiplicative(power_weight(2, 0, 0))


def test_tabulated_range_and_heuristic():
    t = tabulated(-2, [4, 2, 1, 0.5, 0.25])
    assert t(0) == 1.0
    with pytest.raises(IndexError):
        t(3)
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        is_good(t, 4, 4)
    assert rec


def test_parse_weight(tmp_path):
    assert parse_weight("wp:4") == weight_w_p(4)
    assert parse_weight("one")(9) == 1.0
    assert parse_weight("power:2,1,-1") == power_weight(2, 1, -1)
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"kind": "tabulated", "j_lo": 0, "values": [1, 2]}))
    assert parse_weight(str(path))(1) == 2.0
    for bad in ("{bad", "wp:1,2", "nothing-here", '{"kind": "odd"}'):
        with pytest.raises(ValueError):
            parse_weight(bad)


def test_conjugate_exponent():
    assert conjugate_exponent(1) == math.inf
    assert conjugate_exponent(2) == 2.0
    assert conjugate_exponent(4) == pytest.approx(4 / 3)
    with pytest.raises(ValueError):
        conjugate_exponent(0.5)


@given(st.floats(0.1, 10), betas, betas, st.integers(-5, 5))
def test_json_round_trip(c, bp, bm, off):
    w = shift(power_weight(c, bp, bm), off)
    again = VectorWeight.from_json(w.to_json())
    assert again == w


@given(betas, scales, scales)
def test_multiplicative_power(beta, i, j):
    w = power_weight(1, beta, beta)
    assert w(i + j) == pytest.approx(w(i) * w(j), rel=1e-12)


@given(st.floats(0.1, 10), betas, betas, scales, st.integers(-8, 8))
def test_shift_is_translation(c, bp, bm, j, n):
    w = power_weight(c, bp, bm)
    assert shift(w, n)(j) == w(j + n)
    assert shift(shift(w, n), -n) == w


@given(st.lists(st.floats(0.01, 10), min_size=3, max_size=12), st.integers(-10, 10), st.integers(-4, 4))
def test_shift_tabulated(vals, lo, n):
    t = tabulated(lo, vals)
    s = shift(t, n)
    for j in range(s.j_lo, s.j_hi + 1):
        assert s(j) == t(j + n)


@given(st.floats(2.05, 10), st.sampled_from([1, 2, 3]))
def test_wp_scaling_exponent(p, d):
    pp = conjugate_exponent(p)
    assert weight_w_p(p, d).beta_plus == pytest.approx(d * (pp - 2) / (2 * pp))
    assert np.all(np.asarray(weight_w_p(p, d)(np.arange(-3, 4))) > 0)


@given(st.floats(0.1, 10), betas, betas, st.integers(-3, 3), scales, st.floats(1, 5))
def test_power_of_weight(c, bp, bm, off, j, r):
    from modscale.weights import power_of_weight

    w = shift(power_weight(c, bp, bm), off)
    assert power_of_weight(w, r - 1)(j) == pytest.approx(w(j) ** (r - 1), rel=1e-12)
