"""Short-time Fourier transform on the quadrature lattice and STFT-based norms.

``V_phi f(x, xi) = int f(y) conj(phi(y - x)) exp(-2 pi i y.xi) dy`` is evaluated
with the spatial samples of f on ``grid`` and the window wrapped periodically
onto the same lattice, one FFT per x.  Norm computations accumulate
``|V|^p`` over x in chunks, so memory stays proportional to the lattice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.fft as sfft

from modscale.norms import NormReport, _check_exponent, _lq, aggregate
from modscale.parallel import ordered_map
from modscale.spectral import GridSpec, SpectralFunction, spatial_samples
from modscale.weights import VectorWeight

Window = Callable[[np.ndarray], np.ndarray]
CHUNK_POINTS = 2**22
MAX_SAMPLE_POINTS = 2**26


def gaussian_window(x: np.ndarray) -> np.ndarray:
    """``phi(x) = exp(-pi |x|^2)``; x has a trailing vector axis."""
    return np.exp(-np.pi * np.sum(x * x, axis=-1))


def dilated_window(phi: Window, j: int) -> Window:
    """``phi^j(x) = phi(2**j x)``."""
    s = 2.0 ** j
    return lambda x: phi(x * s)


@dataclass
class StftSample:
    """STFT values on (selected spatial nodes) x (full frequency lattice).

    ``values[i, ...]`` belongs to the spatial node ``x[i]``; the trailing d axes
    run over the frequency lattice of ``grid``.
    """

    grid: GridSpec
    x_index: np.ndarray
    values: np.ndarray
    window: str = "gaussian"

    @property
    def x(self) -> np.ndarray:
        axis = self.grid.space_axis()
        return axis[self.x_index]

    @property
    def xi(self) -> np.ndarray:
        return self.grid.freq_axis()


class _Engine:
    """Shared state for slice-wise STFT evaluation on one grid."""

    def __init__(self, f: SpectralFunction, grid: GridSpec, phi: Window):
        if f.dim != grid.d:
            raise ValueError("function and grid dimensions differ")
        self.grid = grid
        d, N = grid.d, grid.N
        self.fx = spatial_samples(f, grid)
        # conj(phi) on signed lattice offsets, in FFT order so rolling by m centers it at x_m
        m = np.fft.fftfreq(N, 1.0 / N) * grid.dx
        pts = np.stack(np.meshgrid(*[m] * d, indexing="ij"), axis=-1)
        self.win = np.conj(np.asarray(phi(pts), dtype=complex))
        if not np.any(self.win != 0):
            raise ValueError("window vanishes on the lattice")
        n = np.arange(N)
        self.pre = np.where(n % 2 == 0, 1.0, -1.0) * np.exp(-1j * np.pi * n / N)
        v = n - N // 2 + 0.5
        self.post = np.exp(1j * np.pi * v) * grid.dx
        self.is_zero = f.is_zero

    def slices(self, flat_index: np.ndarray) -> np.ndarray:
        """STFT rows for the flattened spatial indices, shape (K, N, ..., N)."""
        g = self.grid
        d, N = g.d, g.N
        idx = np.unravel_index(flat_index, (N,) * d)
        out = np.empty((len(flat_index),) + (N,) * d, dtype=complex)
        for r in range(len(flat_index)):
            shift = tuple(int(i[r]) for i in idx)
            out[r] = self.fx * np.roll(self.win, shift, axis=tuple(range(d)))
        for ax in range(d):
            shape = [1] * (d + 1)
            shape[ax + 1] = N
            out *= self.pre.reshape(shape)
        out = sfft.fftn(out, axes=tuple(range(1, d + 1)))
        for ax in range(d):
            shape = [1] * (d + 1)
            shape[ax + 1] = N
            out *= self.post.reshape(shape)
        return out

    def chunks(self):
        total = self.grid.N ** self.grid.d
        per = max(1, CHUNK_POINTS // total)
        return [np.arange(s, min(total, s + per)) for s in range(0, total, per)]


def stft(f: SpectralFunction, grid: GridSpec, window: Optional[Window] = None,
         x_index=None) -> StftSample:
    """STFT on the product lattice, or on the spatial nodes ``x_index`` (flat indices)."""
    phi = window or gaussian_window
    eng = _Engine(f, grid, phi)
    total = grid.N ** grid.d
    idx = np.arange(total) if x_index is None else np.asarray(x_index, dtype=np.int64).ravel()
    if np.any(idx < 0) or np.any(idx >= total):
        raise ValueError("spatial index outside the lattice")
    if len(idx) * total > MAX_SAMPLE_POINTS:
        raise ValueError("product lattice too large; pass x_index or use stft_mod_norm")
    values = eng.slices(idx)
    name = "gaussian" if window is None else getattr(window, "__name__", "custom")
    return StftSample(grid, idx, values, name)


def stft_point(f: SpectralFunction, grid: GridSpec, x, xi, window: Optional[Window] = None) -> complex:
    """``V_phi f(x, xi)`` at one arbitrary point by the same Riemann sum."""
    phi = window or gaussian_window
    d = grid.d
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    axis = grid.space_axis()
    y = np.stack(np.meshgrid(*[axis] * d, indexing="ij"), axis=-1)
    diff = y - x
    period = grid.N * grid.dx
    diff = (diff + period / 2) % period - period / 2
    kernel = np.conj(np.asarray(phi(diff), dtype=complex)) * np.exp(-2j * np.pi * (y @ xi))
    return complex(np.sum(spatial_samples(f, grid) * kernel) * grid.dx ** d)


def _accumulate(eng: _Engine, p: float) -> np.ndarray:
    """``int |V(x, xi)|^p dx`` for every lattice xi."""
    d = eng.grid.d

    def work(chunk):
        v = eng.slices(chunk)
        mag2 = v.real ** 2 + v.imag ** 2
        return (mag2 if p == 2 else mag2 ** (p / 2.0)).sum(axis=0)

    parts = ordered_map(work, eng.chunks())
    return np.sum(np.stack(parts), axis=0) * eng.grid.dx ** d


def stft_mod_norm(f: SpectralFunction, p: float, q: float, j: int = 0,
                  grid: Optional[GridSpec] = None, window: Optional[Window] = None) -> float:
    """``||V_{phi^j} f||_{L^q_xi L^p_x}`` with ``phi^j(x) = phi(2**j x)``."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    grid = grid or GridSpec(d=f.dim)
    if f.is_zero:
        return 0.0
    eng = _Engine(f, grid, dilated_window(window or gaussian_window, j))
    inner = _accumulate(eng, p) ** (1.0 / p)
    return float((np.sum(inner ** q) * grid.dxi ** grid.d) ** (1.0 / q))


def stft_frak_norm(f: SpectralFunction, p: float, q: float, r: float, s: VectorWeight,
                   j_range, grid: Optional[GridSpec] = None,
                   window: Optional[Window] = None) -> NormReport:
    """``l^r_j`` of ``s_j ||V_{phi^j} f||_{L^q_xi L^p_x}``."""
    per_j = []
    for j in range(j_range[0], j_range[1] + 1):
        sj = s(j)
        per_j.append((j, 0.0 if sj == 0 else sj * stft_mod_norm(f, p, q, j, grid, window)))
    return aggregate(per_j, r)


def exchange_weight(w: VectorWeight, q: float, d: int = 1, j_range=(-64, 64)) -> VectorWeight:
    """Tabulated ``s_j = 2**(j d / q') w_j`` on ``j_range``."""
    from modscale.weights import conjugate_exponent, tabulated

    qq = conjugate_exponent(q)
    js = np.arange(j_range[0], j_range[1] + 1)
    inv = 0.0 if math.isinf(qq) else 1.0 / qq
    return tabulated(j_range[0], np.exp2(js * d * inv) * w(js))


def _lattice_index(values, axis, what):
    values = np.atleast_1d(np.asarray(values, dtype=float))
    step = axis[1] - axis[0]
    pos = (values - axis[0]) / step
    idx = np.rint(pos).astype(np.int64)
    if np.any(np.abs(pos - idx) > 1e-9) or np.any(idx < 0) or np.any(idx >= len(axis)):
        raise ValueError(f"{what} sample points are not on the lattice")
    return idx


def verify_a2(f: SpectralFunction, j: int, grid: GridSpec, window: Optional[Window] = None,
              xs=None, xis=None) -> float:
    """Max ``|V_phi(delta_j f)(x, xi) - V_{phi^j} f(2**-j x, 2**j xi)|``.

    The left side lives on ``grid.rescaled(j)``; ``xs`` and ``xis`` (d = 1 only,
    default: 128 evenly spaced nodes and the full frequency axis) must be
    nodes of that lattice.
    """
    from modscale.spectral import delta_op

    if f.is_zero:
        return 0.0
    phi = window or gaussian_window
    fine = grid.rescaled(j)
    if grid.d != 1:
        raise ValueError("verify_a2 samples points in d = 1")
    step = max(1, grid.N // 128)
    x_idx = np.arange(0, grid.N, step) if xs is None else _lattice_index(xs, fine.space_axis(), "x")
    xi_idx = slice(None) if xis is None else _lattice_index(xis, fine.freq_axis(), "xi")
    lhs = stft(delta_op(f, j), fine, phi, x_idx).values[:, xi_idx]
    rhs = stft(f, grid, dilated_window(phi, j), x_idx).values[:, xi_idx]
    return float(np.max(np.abs(lhs - rhs)))
