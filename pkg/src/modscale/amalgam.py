"""Fourier-side amalgam norms, the FX norm and the spatial Wiener amalgam norm."""
from __future__ import annotations

import math
import warnings
from typing import Optional

import numpy as np

from modscale import _cells
from modscale.norms import NormReport, NormSpec, _check_exponent, _defaults, _lq, aggregate
from modscale.partition import PartitionOfUnity
from modscale.spectral import GridSpec, SpectralFunction, spatial_samples
from modscale.weights import VectorWeight, conjugate_exponent, is_good_amalgam


def famalgam_cells(f, p, q, j, pou=None, grid=None):
    pou, grid = _defaults(f, pou, grid)
    ks, vals, plan = _cells.cell_freq_lp(f, pou, grid, j, p, q)
    if len(ks) == 0 and not f.is_zero:
        raise ValueError(f"no frequency cell at scale {j} meets the grid box")
    return ks, vals, plan


def famalgam_norm(f: SpectralFunction, p: float, q: float, j: int = 0,
                  pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None) -> float:
    """``(sum_k ||psi_{j,k} fhat||_{L^p_xi}^q)^(1/q)`` by node quadrature."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    if f.is_zero:
        return 0.0
    return _lq(famalgam_cells(f, p, q, j, pou, grid)[1], q)


def frak_famalgam_norm(f: SpectralFunction, p: float, q: float, r: float, w: VectorWeight,
                       j_range=(-12, 8), pou: Optional[PartitionOfUnity] = None,
                       grid: Optional[GridSpec] = None, per_cell: bool = False) -> NormReport:
    """``l^r_j`` of ``w_j`` times the scale-j Fourier amalgam norm."""
    spec = NormSpec(p, q, r, w, *j_range)
    pou, grid = _defaults(f, pou, grid)
    if not is_good_amalgam(w, p, q, f.dim).good:
        warnings.warn("weight does not satisfy the amalgam goodness condition", stacklevel=2)
    per_j, cells, truncated = [], {}, False
    for j in spec.scales:
        wj = w(j)
        if f.is_zero or wj == 0:
            per_j.append((j, 0.0))
            continue
        ks, vals, plan = famalgam_cells(f, p, q, j, pou, grid)
        truncated |= plan.clipped
        per_j.append((j, wj * _lq(vals, q)))
        if per_cell:
            cells[j] = (ks, vals)
    return aggregate(per_j, r, cells if per_cell else None, truncated)


def fx_norm(f: SpectralFunction, p: float, q: float, j_range=(-12, 8),
            pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None) -> float:
    """``||fhat||`` in the weighted Fourier-side space scaling like L^2.

    ``(sum_j 2**(j d (p'-2) q / (2p')) sum_k ||psi_{j,k} fhat||_{L^p'}^q)^(1/q)``,
    accumulated directly rather than through :func:`frak_famalgam_norm`.
    """
    if not p > 1:
        raise ValueError("p must exceed 1 so that p' is finite")
    pp = conjugate_exponent(p)
    pou, grid = _defaults(f, pou, grid)
    if f.is_zero:
        return 0.0
    d = f.dim
    total = []
    for j in range(j_range[0], j_range[1] + 1):
        _, vals, _ = _cells.cell_freq_lp(f, pou, grid, j, pp, q)
        total.append(2.0 ** (j * d * (pp - 2.0) * q / (2.0 * pp)) * np.sum(vals ** q))
    return float(np.sum(total) ** (1.0 / q))


def hausdorff_young_scale(f: SpectralFunction, p: float, j: int,
                          pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None):
    """Cell-wise ``(k, ||psi_{j,k}(D) f||_{L^p}, ||psi_{j,k} fhat||_{L^p'})`` at scale j."""
    if p < 2:
        raise ValueError("the Hausdorff-Young direction needs p >= 2")
    pou, grid = _defaults(f, pou, grid)
    plan = _cells.plan_scale(f, grid, j)
    ks, lhs, _ = _cells.cell_lp(f, pou, grid, j, p, plan=plan)
    _, rhs, _ = _cells.cell_freq_lp(f, pou, grid, j, conjugate_exponent(p), plan=plan)
    return ks, lhs, rhs


def hausdorff_young_cell_check(f: SpectralFunction, p: float, j: int, k,
                               pou: Optional[PartitionOfUnity] = None,
                               grid: Optional[GridSpec] = None):
    """``(lhs, rhs)`` for a single cell; lhs <= rhs is the inequality under test."""
    if p < 2:
        raise ValueError("the Hausdorff-Young direction needs p >= 2")
    if f.is_zero:
        return 0.0, 0.0
    k = np.atleast_1d(np.asarray(k, dtype=np.int64))
    ks, lhs, rhs = hausdorff_young_scale(f, p, j, pou, grid)
    hit = np.all(ks == k[None, :], axis=1)
    if not np.any(hit):
        return 0.0, 0.0
    i = int(np.flatnonzero(hit)[0])
    return float(lhs[i]), float(rhs[i])


def wiener_window_norms(f: SpectralFunction, p: float, pou: Optional[PartitionOfUnity] = None,
                        grid: Optional[GridSpec] = None):
    """``(k array, ||psi(x - k) f||_{L^p_x})`` over all integer k meeting the spatial lattice."""
    if p < 1:
        raise ValueError("p must be >= 1")
    pou, grid = _defaults(f, pou, grid)
    d = grid.d
    x = grid.space_axis()
    base = np.floor(x).astype(np.int64)
    k_lo = int(base.min())
    span = int(base.max()) + 2 - k_lo
    vals = spatial_samples(f, grid)
    mag = np.abs(vals) ** p
    acc = np.zeros((span,) * d)
    for combo in np.ndindex(*(2,) * d):
        win = np.ones(())
        index = np.zeros((), dtype=np.int64)
        for ax, c in enumerate(combo):
            shape = [1] * d
            shape[ax] = grid.N
            win = win * pou.psi1(x - base - c).reshape(shape) ** p
            index = index * span + (base + c - k_lo).reshape(shape)
        flat = np.broadcast_to(index, mag.shape).ravel()
        acc += np.bincount(flat, weights=(win * mag).ravel(), minlength=span ** d).reshape(acc.shape)
    norms = (acc * grid.dx ** d) ** (1.0 / p)
    ks = np.stack(np.meshgrid(*[np.arange(k_lo, k_lo + span)] * d, indexing="ij"), axis=-1)
    return ks.reshape(-1, d), norms.ravel()


def wiener_amalgam_norm(f: SpectralFunction, p: float, q: float,
                        pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None) -> float:
    """``(sum_k ||psi(x - k) f||_{L^p_x}^q)^(1/q)`` from the spatial lattice samples."""
    if not (1 <= q < math.inf):
        raise ValueError("q must be finite and >= 1")
    if f.is_zero:
        return 0.0
    return _lq(wiener_window_norms(f, p, pou, grid)[1], q)
