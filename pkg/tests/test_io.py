import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale import io, stft
from modscale.spectral import GridSpec, sample_frequency, synthesize


def test_round_trip(tmp_path):
    grid = GridSpec(1, 6, 6)
    vals = sample_frequency(synthesize("gaussian", 1), grid)
    path = tmp_path / "g.bin"
    io.write_snapshot(path, vals, grid)
    raw = path.read_bytes()
    assert raw[:16] == b"MODSCALE-SPECv1\x00"
    assert len(raw) == 16 + 12 + 16 * 8192
    snap = io.read_snapshot(path)
    assert (snap.d, snap.a, snap.b, snap.N) == (1, 6, 6, 8192)
    np.testing.assert_array_equal(snap.values, vals)


def test_d2_row_major(tmp_path):
    grid = GridSpec(2, 2, 2)
    vals = np.arange(grid.N ** 2).reshape(grid.N, grid.N) * (1 + 1j)
    io.write_snapshot(tmp_path / "a.bin", vals, grid)
    raw = np.frombuffer((tmp_path / "a.bin").read_bytes()[28:], dtype="<f8")
    assert raw[2] == 1.0 and raw[3] == 1.0   # second value is vals[0, 1]
    np.testing.assert_array_equal(io.read_snapshot(tmp_path / "a.bin").values, vals)


def test_stft_product_snapshot(tmp_path):
    grid = GridSpec(1, 3, 2)
    sample = stft.stft(synthesize("gaussian", 1), grid)
    io.write_stft_snapshot(tmp_path / "s.bin", sample)
    snap = io.read_snapshot(tmp_path / "s.bin")
    assert snap.product and snap.values.shape == (grid.N, grid.N)
    np.testing.assert_array_equal(snap.values, sample.values)
    partial = stft.stft(synthesize("gaussian", 1), grid, x_index=[0, 1])
    with pytest.raises(ValueError):
        io.write_stft_snapshot(tmp_path / "p.bin", partial)


def test_bad_files(tmp_path):
    (tmp_path / "x.bin").write_bytes(b"not a snapshot at all, really")
    with pytest.raises(ValueError):
        io.read_snapshot(tmp_path / "x.bin")
    grid = GridSpec(1, 2, 2)
    io.write_snapshot(tmp_path / "t.bin", np.zeros(grid.N), grid)
    (tmp_path / "t.bin").write_bytes((tmp_path / "t.bin").read_bytes()[:-8])
    with pytest.raises(ValueError):
        io.read_snapshot(tmp_path / "t.bin")
    with pytest.raises(ValueError):
        io.write_snapshot(tmp_path / "w.bin", np.zeros(3), grid)


@given(st.integers(1, 2), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31))
def test_random_round_trip(d, a, b, seed):
    import tempfile
    from pathlib import Path

    grid = GridSpec(d, a, b)
    rng = np.random.default_rng(seed)
    vals = rng.normal(size=(grid.N,) * d) + 1j * rng.normal(size=(grid.N,) * d)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "r.bin"
        io.write_snapshot(path, vals, grid)
        np.testing.assert_array_equal(io.read_snapshot(path).values, vals)
