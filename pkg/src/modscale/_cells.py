"""Batched per-cell quadrature for the dyadic frequency cells.

At scale j every cell ``2**j ([-1, 1]^d + k)`` is clipped to the grid box and
sampled with spacing ``h_j = min(2**-a, 2**(j - cell_exponent))`` at nodes
aligned to the cell corner.  The cell piece is then a trigonometric sum whose
spatial values on the lattice ``x = m / (L h_j)`` come from one zero-padded
inverse FFT of length ``L = 2**oversample * n``.

The node layout is covariant: on ``grid.dilated(j0)`` the cell ``(j + j0, k)``
sees exactly ``2**j0`` times the nodes of cell ``(j, k)`` on ``grid``.  The
scaling identities therefore hold up to rounding, not up to quadrature error.

Cells are grouped into classes with identical node counts and window offsets,
processed in chunks of bounded size on the ordered thread pool, and returned
sorted by k so reductions do not depend on chunking or worker count.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.fft as sfft

from modscale.parallel import ordered_map
from modscale.partition import PartitionOfUnity
from modscale.spectral import Box, GridSpec, SpectralFunction

CHUNK_POINTS = 2**22
# points alive across all workers at once; single cells larger than a chunk limit concurrency
LIVE_POINTS = 2**24
MAX_SCALE_POINTS = 2**32


@dataclass(frozen=True)
class AxisClass:
    ks: np.ndarray     # cell indices sharing this layout
    offset: int        # first window node, counted from the cell corner
    n: int             # window nodes


@dataclass(frozen=True)
class ScalePlan:
    j: int
    h: float
    classes: tuple     # per axis: tuple of AxisClass
    clipped: bool      # essential box reaches beyond the grid box
    unbounded: bool    # no support/decay hint was available

    @property
    def n_cells(self) -> int:
        total = 1
        for axis in self.classes:
            total *= sum(len(c.ks) for c in axis)
        return total


def node_spacing(grid: GridSpec, j: int) -> float:
    return min(2.0 ** -grid.a, 2.0 ** (j - grid.cell_exponent))


def _axis_classes(j, h, lo, hi, box_lo, box_hi):
    """Cells meeting (lo, hi) on one axis, grouped by window layout."""
    s = 2.0 ** j
    if hi <= lo:
        return ()
    k_min = math.floor(lo / s - 1.0) + 1
    k_max = math.ceil(hi / s + 1.0) - 1
    if k_max < k_min:
        return ()
    ks = np.arange(k_min, k_max + 1, dtype=np.int64)
    cell_lo = s * (ks - 1.0)
    cell_hi = s * (ks + 1.0)
    w_lo = np.maximum(cell_lo, box_lo)
    w_hi = np.minimum(cell_hi, box_hi)
    offset = np.rint((w_lo - cell_lo) / h).astype(np.int64)
    n = np.rint((w_hi - w_lo) / h).astype(np.int64)
    keep = n > 0
    ks, offset, n = ks[keep], offset[keep], n[keep]
    classes = []
    keys = np.stack([offset, n], axis=1)
    uniq = np.unique(keys, axis=0)
    for off, cnt in uniq:
        sel = (offset == off) & (n == cnt)
        classes.append(AxisClass(ks[sel], int(off), int(cnt)))
    return tuple(classes)


def plan_scale(f: SpectralFunction, grid: GridSpec, j: int, q: float = 1.0,
               region: Optional[Box] = None) -> ScalePlan:
    """Cells at scale j on which f is not negligible.

    A cell is dropped when the support or decay hint of f bounds it by
    ``tail_tol**(1/q)`` times the hint amplitude, so the dropped cells carry
    about ``tail_tol`` of the ``l^q`` sum.
    """
    h = node_spacing(grid, j)
    gbox = grid.box
    unbounded = False
    if f.is_zero:
        return ScalePlan(j, h, tuple(() for _ in range(grid.d)), False, False)
    ess = f.essential_box(grid.tail_tol ** (1.0 / q))
    if ess is None:
        ess = gbox
        unbounded = True
    if region is not None:
        ess = ess.intersect(region)
    clipped = any(l < gl for l, gl in zip(ess.lo, gbox.lo)) or any(
        u > gu for u, gu in zip(ess.hi, gbox.hi))
    box = ess.intersect(gbox)
    # cheap count before any index arrays are allocated
    n_pts = 1.0
    for lo, hi in zip(box.lo, box.hi):
        # each overlapping cell covers twice its share of the nodes
        n_pts *= max(0.0, 2.0 * (hi - lo) / h + 2.0 ** (j + 1) / h) * 2.0 ** grid.oversample
    if n_pts > MAX_SCALE_POINTS:
        raise ValueError(
            f"scale j={j} needs about {n_pts:.3g} quadrature points; narrow the j-range or coarsen the grid")
    classes = []
    for ax in range(grid.d):
        classes.append(_axis_classes(j, h, box.lo[ax], box.hi[ax], gbox.lo[ax], gbox.hi[ax]))
    plan = ScalePlan(j, h, tuple(classes), bool(clipped or unbounded), unbounded)
    return plan


def _check_budget(plan: ScalePlan, oversample: int):
    pts = 0
    for combo in itertools.product(*plan.classes):
        cells = 1
        size = 1
        for c in combo:
            cells *= len(c.ks)
            size *= c.n * 2**oversample
        pts += cells * size
    if pts > MAX_SCALE_POINTS:
        raise ValueError(
            f"scale j={plan.j} needs {pts} quadrature points; narrow the j-range or coarsen the grid"
        )


def _run(work, items):
    biggest = max((int(np.prod([c.n * 2**ov for c in combo])) for combo, _, _, _, ov in items), default=1)
    per_chunk = max(CHUNK_POINTS, biggest)
    return ordered_map(lambda it: work(it[:4]), items, max_workers=LIVE_POINTS // per_chunk)


def _chunks(plan: ScalePlan, oversample: int):
    """Deterministic work items: (class combo, slice of flattened cell indices)."""
    items = []
    for combo in itertools.product(*plan.classes):
        counts = tuple(len(c.ks) for c in combo)
        total = int(np.prod(counts))
        size = int(np.prod([c.n * 2**oversample for c in combo]))
        per = max(1, CHUNK_POINTS // size)
        for start in range(0, total, per):
            items.append((combo, counts, start, min(total, start + per), oversample))
    return items


def _cell_block(f, pou, plan, combo, counts, start, stop):
    """Coefficient block (K, n_1, ..., n_d) and the cells' k (K, d) and first nodes."""
    j, h = plan.j, plan.h
    d = len(combo)
    idx = np.unravel_index(np.arange(start, stop), counts)
    ks = np.stack([c.ks[i] for c, i in zip(combo, idx)], axis=1)
    s = 2.0 ** j
    first = np.empty(ks.shape, dtype=float)
    coords = []
    window = np.ones(())
    for ax, c in enumerate(combo):
        first[:, ax] = s * (ks[:, ax] - 1.0) + (c.offset + 0.5) * h
        steps = np.arange(c.n) * h
        shape = [len(ks)] + [1] * d
        shape[ax + 1] = c.n
        coords.append((first[:, ax][:, None] + steps[None, :]).reshape(shape))
        u = -1.0 + (c.offset + np.arange(c.n) + 0.5) * (h / s)
        wshape = [1] * d
        wshape[ax] = c.n
        window = window * pou.psi1(u).reshape(wshape)
    full = tuple([len(ks)] + [c.n for c in combo])
    xi = np.stack([np.broadcast_to(x, full) for x in coords], axis=-1)
    vals = f(xi)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"non-finite sample of {f.name} in a frequency cell at j={j}")
    return ks, first, vals * window


def _padded(combo, oversample):
    return tuple(c.n * 2**oversample for c in combo)


def _magnitude_power(x, p):
    mag2 = x.real ** 2 + x.imag ** 2
    return mag2 if p == 2 else mag2 ** (p / 2.0)


def _collect(results, d):
    if not results:
        return np.zeros((0, d), dtype=np.int64), np.zeros(0)
    ks = np.concatenate([r[0] for r in results])
    vals = np.concatenate([r[1] for r in results])
    order = np.lexsort(ks.T[::-1])
    return ks[order], vals[order]


def cell_lp(f: SpectralFunction, pou: PartitionOfUnity, grid: GridSpec, j: int, p: float,
            q: float = 1.0, plan: Optional[ScalePlan] = None):
    """``||psi_{j,k}(D) f||_{L^p}`` for every retained cell, sorted by k."""
    plan = plan or plan_scale(f, grid, j, q)
    _check_budget(plan, grid.oversample)
    d, h, ov = grid.d, plan.h, grid.oversample

    def work(item):
        combo, counts, start, stop = item
        ks, _, coef = _cell_block(f, pou, plan, combo, counts, start, stop)
        shape = _padded(combo, ov)
        x = sfft.ifftn(coef, s=shape, axes=tuple(range(1, d + 1)), norm="forward")
        acc = _magnitude_power(x, p).reshape(len(ks), -1).sum(axis=1)
        vol = float(np.prod(shape))
        return ks, h ** (d * (1.0 - 1.0 / p)) * (acc / vol) ** (1.0 / p)

    return _collect(_run(work, _chunks(plan, ov)), d) + (plan,)


def cell_freq_lp(f: SpectralFunction, pou: PartitionOfUnity, grid: GridSpec, j: int, p: float,
                 q: float = 1.0, plan: Optional[ScalePlan] = None):
    """``||psi_{j,k} fhat||_{L^p_xi}`` by node quadrature, sorted by k."""
    plan = plan or plan_scale(f, grid, j, q)
    _check_budget(plan, 0)
    d, h = grid.d, plan.h

    def work(item):
        combo, counts, start, stop = item
        ks, _, coef = _cell_block(f, pou, plan, combo, counts, start, stop)
        acc = _magnitude_power(coef, p).reshape(len(ks), -1).sum(axis=1)
        return ks, (h ** d * acc) ** (1.0 / p)

    return _collect(_run(work, _chunks(plan, 0)), d) + (plan,)


def _lattice_phase(first, shape, h, factor):
    """``exp(2 pi i factor x.first)`` on the signed spatial lattice, per cell."""
    phase = np.ones(())
    d = len(shape)
    for ax, L in enumerate(shape):
        m = np.fft.fftfreq(L, 1.0 / L)  # signed integers in FFT order
        x = m / (L * h)
        pshape = [first.shape[0]] + [1] * d
        pshape[ax + 1] = L
        phase = phase * np.exp(2j * np.pi * factor * np.outer(first[:, ax], x)).reshape(pshape)
    return phase


def cell_pairing(f: SpectralFunction, g: SpectralFunction, pou: PartitionOfUnity,
                 grid: GridSpec, j: int, conjugate: bool = False):
    """Per-cell ``int F G dx`` (or ``int F conj(G) dx``) on the shared lattice.

    Only cells retained for both functions contribute.
    """
    if f.is_zero or g.is_zero:
        return np.zeros((0, grid.d), dtype=np.int64), np.zeros(0, dtype=complex)
    plan = plan_scale(f, grid, j, region=g.essential_box(grid.tail_tol))
    _check_budget(plan, grid.oversample)
    d, h, ov = grid.d, plan.h, grid.oversample

    def work(item):
        combo, counts, start, stop = item
        ks, first, cf = _cell_block(f, pou, plan, combo, counts, start, stop)
        _, _, cg = _cell_block(g, pou, plan, combo, counts, start, stop)
        shape = _padded(combo, ov)
        axes = tuple(range(1, d + 1))
        xf = sfft.ifftn(cf, s=shape, axes=axes, norm="forward")
        xg = sfft.ifftn(cg, s=shape, axes=axes, norm="forward")
        if conjugate:
            prod = xf * np.conj(xg)
        else:
            prod = xf * xg * _lattice_phase(first, shape, h, 2.0)
        vol = float(np.prod(shape))
        return ks, h ** d * prod.reshape(len(ks), -1).sum(axis=1) / vol

    return _collect(_run(work, _chunks(plan, ov)), d)


def cell_values(f: SpectralFunction, pou: PartitionOfUnity, grid: GridSpec, j: int, k):
    """Spatial lattice and complex values of ``psi_{j,k}(D) f`` for one cell.

    Returns ``(axes, values)`` with the lattice axes sorted ascending and
    ``values`` of shape ``(L_1, ..., L_d)``.
    """
    k = tuple(int(v) for v in np.atleast_1d(k))
    if len(k) != grid.d:
        raise ValueError("cell index has the wrong dimension")
    h = node_spacing(grid, j)
    s = 2.0 ** j
    gbox = grid.box
    combo = []
    for ax in range(grid.d):
        lo, hi = s * (k[ax] - 1.0), s * (k[ax] + 1.0)
        found = _axis_classes(j, h, lo + 0.5 * s, hi - 0.5 * s, gbox.lo[ax], gbox.hi[ax])
        match = [c for c in found if k[ax] in c.ks]
        if not match:
            raise ValueError(f"cell {k} at scale {j} does not meet the grid box")
        c = match[0]
        combo.append(AxisClass(np.array([k[ax]]), c.offset, c.n))
    plan = ScalePlan(j, h, tuple((c,) for c in combo), False, False)
    _, first, coef = _cell_block(f, pou, plan, tuple(combo), (1,) * grid.d, 0, 1)
    shape = _padded(combo, grid.oversample)
    x = sfft.ifftn(coef, s=shape, axes=tuple(range(1, grid.d + 1)), norm="forward")
    vals = (h ** grid.d) * x * _lattice_phase(first, shape, h, 1.0)
    vals = np.fft.fftshift(vals[0])
    axes = [np.fft.fftshift(np.fft.fftfreq(L, 1.0 / L)) / (L * h) for L in shape]
    return axes, vals
