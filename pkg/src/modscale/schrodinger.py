"""Free Schrödinger propagator as a Fourier multiplier, its scaling identities
and envelope sweeps over (scale, time).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Union

import numpy as np

from modscale import _cells
from modscale.norms import _defaults, _lq, mod_norm
from modscale.partition import PartitionOfUnity
from modscale.spectral import (GridSpec, SpectralFunction, apply_multiplier, delta_op,
                               japanese_bracket, spatial_samples)
from modscale.weights import VectorWeight, conjugate_exponent, sigma_weight

Family = Union[SpectralFunction, Callable[[int], SpectralFunction]]
SWEEP_HEADER = ("j", "t", "ratio", "envelope", "ratio_over_envelope")


def propagate(f: SpectralFunction, t: float) -> SpectralFunction:
    """``S(t) f`` with multiplier ``exp(4 pi^2 i t |xi|^2)``."""
    if t == 0:
        return f
    c = 4.0 * math.pi ** 2 * t
    return apply_multiplier(
        f, lambda xi: np.exp(1j * (c * np.sum(xi * xi, axis=-1))), bound=1.0,
        name=f"S[{t:g}]",
    )


def verify_z0(f: SpectralFunction, t: float, j: int, k, pou: Optional[PartitionOfUnity] = None,
              grid: Optional[GridSpec] = None, xs=None, relative: bool = True) -> float:
    """Compare ``psi_{j,k}(D) S(t) f`` at x with ``2**(jd) psi(D-k) S(4**j t) delta_j f`` at ``2**j x``.

    The right side is evaluated on ``grid.rescaled(j)``, whose cell lattice is
    the left lattice scaled by ``2**j``.  ``xs`` must be nodes of the left
    lattice (default: all of them).  Returns the max deviation, divided by
    ``max |lhs|`` when ``relative``.
    """
    pou, grid = _defaults(f, pou, grid)
    if f.is_zero:
        return 0.0
    axes_l, lhs = _cells.cell_values(propagate(f, t), pou, grid, j, k)
    axes_r, rhs = _cells.cell_values(propagate(delta_op(f, j), 4.0 ** j * t), pou,
                                     grid.rescaled(j), 0, k)
    for al, ar in zip(axes_l, axes_r):
        if len(al) != len(ar) or not np.allclose(ar, 2.0 ** j * al, rtol=0, atol=1e-12 * np.max(np.abs(ar))):
            raise ValueError("cell lattices do not correspond")
    rhs = 2.0 ** (j * f.dim) * rhs
    if xs is not None:
        if f.dim != 1:
            raise ValueError("explicit sample points are supported in d = 1")
        axis = axes_l[0]
        step = axis[1] - axis[0]
        pos = (np.atleast_1d(np.asarray(xs, dtype=float)) - axis[0]) / step
        idx = np.rint(pos).astype(np.int64)
        if np.any(np.abs(pos - idx) > 1e-9) or np.any(idx < 0) or np.any(idx >= len(axis)):
            raise ValueError("sample points are not aligned with the cell lattice")
        lhs, rhs = lhs[idx], rhs[idx]
    dev = float(np.max(np.abs(lhs - rhs)))
    if relative:
        top = float(np.max(np.abs(lhs)))
        return dev / top if top > 0 else dev
    return dev


def verify_z1(f: SpectralFunction, t: float, p: float, q: float, j: int,
              pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None):
    """``(||S(t) f||_[j], 2**(jd/p') ||S(4**j t) delta_j f||_[0])``, the latter on ``grid.rescaled(j)``."""
    pou, grid = _defaults(f, pou, grid)
    pp = conjugate_exponent(p)
    inv = 0.0 if math.isinf(pp) else 1.0 / pp
    lhs = mod_norm(propagate(f, t), p, q, j, pou, grid)
    rhs = 2.0 ** (j * f.dim * inv) * mod_norm(
        propagate(delta_op(f, j), 4.0 ** j * t), p, q, 0, pou, grid.rescaled(j))
    return lhs, rhs


# ---------------------------------------------------------------------------
# sweeps


def dispersive_grid(grid: GridSpec, j: int, t: float) -> GridSpec:
    """Raise ``cell_exponent`` so the scale-j cell period holds the dispersed packet.

    A cell of width ``2**(j+1)`` spreads over ``8 pi |t| 2**j`` in space; the
    period ``2**(c - j)`` is kept at least twice that plus the unpropagated
    width ``2**(c0 - j)``.
    """
    s = abs(t) * 4.0 ** j
    need = 16.0 * math.pi * s + 2.0 ** grid.cell_exponent
    return replace(grid, cell_exponent=max(grid.cell_exponent, math.ceil(math.log2(need))))


def _member(f: Family, j: int, matched: bool, grid: GridSpec):
    """The sweep function at scale j and its base grid.

    With ``matched`` the function is ``delta_{-j} f`` (frequency profile
    stretched by ``2**j``) on ``grid.dilated(j)``, which makes the ratios
    depend on ``4**j t`` only.
    """
    if callable(f) and not isinstance(f, SpectralFunction):
        return f(j), grid
    if matched:
        return delta_op(f, -j), grid.dilated(j)
    return f, grid


@dataclass(frozen=True)
class SweepRow:
    j: int
    t: float
    ratio: float
    envelope: float

    @property
    def ratio_over_envelope(self) -> float:
        return self.ratio / self.envelope

    @property
    def argument(self) -> float:
        return 4.0 ** self.j * self.t


def envelope_sweep_z4(f: Family, p: float, q: float, j_list: Sequence[int], t_list: Sequence[float],
                      pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None,
                      matched: bool = True) -> list:
    """Rows ``||S(t) f||_[j] / ||f||_[j]`` against ``<4**j t>**(d |1/2 - 1/p|)``, ordered by (j, t)."""
    probe = f(0) if callable(f) and not isinstance(f, SpectralFunction) else f
    pou, grid = _defaults(probe, pou, grid)
    d = probe.dim
    gamma = d * abs(0.5 - 1.0 / p)
    rows = []
    for j in sorted(j_list):
        fj, gj = _member(f, j, matched, grid)
        den = mod_norm(fj, p, q, j, pou, gj)
        for t in sorted(t_list):
            num = mod_norm(propagate(fj, t), p, q, j, pou, dispersive_grid(gj, j, t))
            env = japanese_bracket(4.0 ** j * t) ** gamma
            rows.append(SweepRow(j, float(t), num / den, env))
    return rows


def envelope_sweep_z6(f: Family, p: float, q: float, j_list: Sequence[int], t_list: Sequence[float],
                      pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None,
                      matched: bool = True) -> list:
    """Rows ``||S(t) f||_{p,q,[j]} / (2**(2jd(1/2-1/p)) ||f||_{p',q,[j]})`` against
    ``<4**j t>**(-d (1/2 - 1/p))``.
    """
    if p < 2:
        raise ValueError("the dispersive envelope needs p >= 2")
    probe = f(0) if callable(f) and not isinstance(f, SpectralFunction) else f
    pou, grid = _defaults(probe, pou, grid)
    d = probe.dim
    gamma = d * (0.5 - 1.0 / p)
    pp = conjugate_exponent(p)
    rows = []
    for j in sorted(j_list):
        fj, gj = _member(f, j, matched, grid)
        den = 2.0 ** (2 * j * gamma) * mod_norm(fj, pp, q, j, pou, gj)
        for t in sorted(t_list):
            num = mod_norm(propagate(fj, t), p, q, j, pou, dispersive_grid(gj, j, t))
            env = japanese_bracket(4.0 ** j * t) ** (-gamma)
            rows.append(SweepRow(j, float(t), num / den, env))
    return rows


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for r in rows:
        writer.writerow([r.j, repr(r.t), repr(r.ratio), repr(r.envelope), repr(r.ratio_over_envelope)])
    return buf.getvalue()


def spread(rows) -> float:
    """``max / min`` of ratio over envelope."""
    vals = np.array([r.ratio_over_envelope for r in rows])
    return float(vals.max() / vals.min())


def top_decade_slope(rows) -> float:
    """Least-squares slope of log ratio against log ``4**j t`` over the top decade of the argument."""
    arg = np.array([r.argument for r in rows])
    ratio = np.array([r.ratio for r in rows])
    keep = (arg > 0) & (arg >= arg.max() / 10.0)
    if np.count_nonzero(np.unique(arg[keep])) < 2:
        raise ValueError("top decade holds fewer than two distinct arguments")
    return float(np.polyfit(np.log(arg[keep]), np.log(ratio[keep]), 1)[0])


def _frak_dispersive(f, p, q, r, w, j_range, t, pou, grid):
    per = []
    for j in range(j_range[0], j_range[1] + 1):
        wj = w(j)
        if wj == 0:
            continue
        per.append(wj * mod_norm(propagate(f, t), p, q, j, pou, dispersive_grid(grid, j, t)))
    return _lq(per, r)


def sigma_sweep(f: SpectralFunction, p: float, q: float, r: float, w: VectorWeight,
                t_list: Sequence[float], j_range=(-8, 4), pou: Optional[PartitionOfUnity] = None,
                grid: Optional[GridSpec] = None):
    """``(t, ||S(t) f||_{sigma} / ||f||_{w}, <t>**(d |1/2 - 1/p|))`` rows.

    Each scale uses its own dispersive grid so no packet wraps around.
    """
    pou, grid = _defaults(f, pou, grid)
    sigma = sigma_weight(w, p, f.dim)
    gamma = f.dim * abs(0.5 - 1.0 / p)
    base = _frak_dispersive(f, p, q, r, w, j_range, 0.0, pou, grid)
    rows = []
    for t in sorted(t_list):
        num = _frak_dispersive(f, p, q, r, sigma, j_range, t, pou, grid)
        rows.append((float(t), num / base, japanese_bracket(t) ** gamma))
    return rows


def aggregate_z6(f: SpectralFunction, p: float, q: float, r: float, w: VectorWeight,
                 t_list: Sequence[float], j_range=(-8, 4), pou: Optional[PartitionOfUnity] = None,
                 grid: Optional[GridSpec] = None):
    """``(t, ||S(t) f||_{p,q,r,w} / ||f||_{p',q,r,w}, <t>**(-d (1/2 - 1/p)))`` rows."""
    if p < 2:
        raise ValueError("the dispersive envelope needs p >= 2")
    pou, grid = _defaults(f, pou, grid)
    gamma = f.dim * (0.5 - 1.0 / p)
    base = _frak_dispersive(f, conjugate_exponent(p), q, r, w, j_range, 0.0, pou, grid)
    rows = []
    for t in sorted(t_list):
        num = _frak_dispersive(f, p, q, r, w, j_range, t, pou, grid)
        rows.append((float(t), num / base, japanese_bracket(t) ** (-gamma)))
    return rows


# ---------------------------------------------------------------------------
# exploratory space-time probe


@dataclass(frozen=True)
class ProbeRow:
    name: str
    spacetime: float
    fx: float
    frak: float

    @property
    def over_fx(self) -> float:
        return self.spacetime / self.fx if self.fx > 0 else math.nan

    @property
    def over_frak(self) -> float:
        return self.spacetime / self.frak if self.frak > 0 else math.nan


def spacetime_norm(f: SpectralFunction, q: float, T: float, steps: int, grid: GridSpec) -> float:
    """``||S(t) f||_{L^q_{t,x}}`` over ``[-T, T]`` by midpoint steps in t."""
    if f.is_zero:
        return 0.0
    dt = 2.0 * T / steps
    acc = []
    for i in range(steps):
        t = -T + (i + 0.5) * dt
        u = spatial_samples(propagate(f, t), grid)
        acc.append(np.sum(np.abs(u) ** q) * grid.dx ** grid.d)
    return float((np.sum(acc) * dt) ** (1.0 / q))


def strichartz_probe(functions: Sequence[SpectralFunction], p: float, q: float = 6.0,
                     T: float = 1.0, steps: int = 64, j_range=(-8, 4),
                     pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None):
    """Space-time norm against the two candidate right-hand sides (exploratory).

    Only d = 1 with q = 6 and 2 < p < 3 is accepted.
    """
    from modscale.amalgam import fx_norm
    from modscale.norms import NormSpec, frak_norm
    from modscale.weights import weight_w_p

    if q != 6.0 or not (2.0 < p < 3.0):
        raise ValueError("the probe is defined for d = 1, q = 6 and 2 < p < 3")
    rows = []
    for f in functions:
        if f.dim != 1:
            raise ValueError("the probe is defined for d = 1")
        pou_, grid_ = _defaults(f, pou, grid)
        st = spacetime_norm(f, q, T, steps, grid_)
        fx = fx_norm(f, p, q, j_range, pou_, grid_)
        spec = NormSpec(p, q, q, weight_w_p(p, 1), *j_range)
        fr = frak_norm(f, spec, pou_, grid_).value
        rows.append(ProbeRow(f.name, st, fx, fr))
    return rows
