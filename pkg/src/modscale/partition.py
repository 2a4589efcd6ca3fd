"""Smooth partition of unity on the integer lattice and its dyadic cells."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from modscale.spectral import Box, GridSpec, SpectralFunction, apply_multiplier


def rho(t):
    """Smooth step: 0 for t <= 0, 1 for t >= 1, ``rho(t) + rho(1-t) = 1``.

    Built from ``h(t) = exp(-1/t)`` as ``h(t) / (h(t) + h(1-t))``, written as a
    logistic in ``1/t - 1/(1-t)`` so that it never divides two underflowed
    exponentials.
    """
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 1.0, 1.0, 0.0)
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    with np.errstate(over="ignore"):
        out[mid] = 1.0 / (1.0 + np.exp(1.0 / tm - 1.0 / (1.0 - tm)))
    return out


def window_1d(u, generator: Callable = rho):
    """``psi_1(u) = rho(1 + u) rho(1 - u)``, supported in [-1, 1]."""
    u = np.asarray(u, dtype=float)
    return generator(1.0 + u) * generator(1.0 - u)


@dataclass(frozen=True)
class FrequencyCell:
    """Index pair (j, k); the cell box is ``2**j ([-1, 1]^d + k)``."""

    j: int
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in np.atleast_1d(self.k)))

    @property
    def dim(self):
        return len(self.k)

    def box(self) -> Box:
        s = 2.0 ** self.j
        return Box(tuple(s * (k - 1) for k in self.k), tuple(s * (k + 1) for k in self.k))

    def volume(self):
        return 2.0 ** (self.j * self.dim) * 2 ** self.dim


@dataclass(frozen=True)
class PartitionOfUnity:
    """Tensor-product window ``psi(xi) = prod_i psi_1(xi_i)``.

    ``generator`` replaces the transition function; only the default produces a
    genuine partition of unity (the hook exists for negative controls).
    """

    d: int
    generator: Optional[Callable] = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")

    @property
    def rho(self) -> Callable:
        return self.generator if self.generator is not None else rho

    @property
    def is_standard(self) -> bool:
        return self.generator is None

    def psi1(self, u):
        return window_1d(u, self.rho)

    def psi(self, xi):
        xi = np.asarray(xi, dtype=float)
        if self.d == 1 and (xi.ndim == 0 or xi.shape[-1] != 1):
            xi = xi[..., None]
        if xi.shape[-1] != self.d:
            raise ValueError(f"expected points with trailing axis {self.d}")
        return np.prod(self.psi1(xi), axis=-1)

    def __call__(self, xi):
        return self.psi(xi)


def build_pou(d: int = 1) -> PartitionOfUnity:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return PartitionOfUnity(d)


def _cell_multiplier(pou: PartitionOfUnity, cell: FrequencyCell):
    s = 2.0 ** -cell.j
    k = np.asarray(cell.k, dtype=float)

    def m(xi):
        return pou.psi(np.asarray(xi, dtype=float) * s - k)

    return m


def eval_cell(pou: PartitionOfUnity, cell: FrequencyCell, xi):
    """``psi(2**-j xi - k)``."""
    if cell.dim != pou.d:
        raise ValueError("cell and partition dimensions differ")
    return _cell_multiplier(pou, cell)(xi)


def project_cell(f: SpectralFunction, pou: PartitionOfUnity, cell: FrequencyCell) -> SpectralFunction:
    """Frequency rule of ``psi_{j,k}(D) f``."""
    if f.dim != pou.d or cell.dim != pou.d:
        raise ValueError("function, partition and cell dimensions differ")
    return apply_multiplier(
        f, _cell_multiplier(pou, cell), bound=1.0, support=cell.box(),
        name=f"psi[{cell.j},{cell.k}]",
    )


def validate_pou(pou: PartitionOfUnity, grid: GridSpec) -> float:
    """Largest ``|sum_k psi(xi - k) - 1|`` over the frequency lattice of ``grid``."""
    if grid.d != pou.d:
        raise ValueError("grid and partition dimensions differ")
    axis = grid.freq_axis()
    base = np.floor(axis)
    # per axis only floor(xi) and floor(xi)+1 can be active
    active = [pou.psi1(axis - base), pou.psi1(axis - base - 1.0)]
    worst = 0.0
    if pou.d == 1:
        return float(np.max(np.abs(active[0] + active[1] - 1.0)))
    total = np.zeros((grid.N,) * pou.d)
    for combo in itertools.product((0, 1), repeat=pou.d):
        term = np.ones(())
        for ax, c in enumerate(combo):
            shape = [1] * pou.d
            shape[ax] = grid.N
            term = term * active[c].reshape(shape)
        total = total + term
    worst = float(np.max(np.abs(total - 1.0)))
    return worst
