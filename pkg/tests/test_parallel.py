import pytest
from hypothesis import given
from hypothesis import strategies as st

from modscale import _cells, stft
from modscale.norms import NormSpec, frak_norm
from modscale.parallel import ordered_map, worker_count
from modscale.spectral import GridSpec, synthesize
from modscale.weights import weight_w_p


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("MODSCALE_THREADS", "3")
    assert worker_count() == 3
    for bad in ("0", "-2", "many"):
        monkeypatch.setenv("MODSCALE_THREADS", bad)
        with pytest.raises(ValueError):
            worker_count()


@given(st.lists(st.integers(), max_size=40), st.integers(1, 8))
def test_ordered_map_keeps_order(items, n):
    assert ordered_map(lambda x: 2 * x, items, max_workers=n) == [2 * x for x in items]


@pytest.mark.parametrize("threads", ["1", "2", "8"])
def test_norm_independent_of_threads(monkeypatch, threads):
    monkeypatch.setattr(_cells, "CHUNK_POINTS", 2**9)
    monkeypatch.setattr(stft, "CHUNK_POINTS", 2**12)
    f = synthesize("random-bandlimited", 1, seed=7)
    grid = GridSpec(1, 5, 4)
    monkeypatch.setenv("MODSCALE_THREADS", "1")
    ref = frak_norm(f, NormSpec(4, 4, 4, weight_w_p(4), -4, 4), grid=grid).to_json()
    ref_s = stft.stft_mod_norm(f, 4, 2, 0, grid)
    monkeypatch.setenv("MODSCALE_THREADS", threads)
    assert frak_norm(f, NormSpec(4, 4, 4, weight_w_p(4), -4, 4), grid=grid).to_json() == ref
    assert stft.stft_mod_norm(f, 4, 2, 0, grid) == ref_s
