"""Modulation norms at one scale and the weighted aggregate over scales."""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from modscale import _cells
from modscale.partition import PartitionOfUnity, build_pou
from modscale.spectral import GridSpec, SpectralFunction, dilate_dyadic
from modscale.weights import VectorWeight, conjugate_exponent, is_good, shift


def _check_exponent(name, v):
    if not (1 <= v < math.inf):
        raise ValueError(f"{name} must be finite and >= 1, got {v}")


@dataclass(frozen=True)
class NormSpec:
    """Exponents, weight and scale window of a weighted modulation norm."""

    p: float
    q: float
    r: float
    weight: VectorWeight
    j_min: int = -12
    j_max: int = 8

    def __post_init__(self):
        for name in ("p", "q", "r"):
            _check_exponent(name, getattr(self, name))
        if self.j_min > self.j_max:
            raise ValueError(f"empty scale range [{self.j_min}, {self.j_max}]")

    @property
    def scales(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def shifted(self, n: int) -> "NormSpec":
        return replace(self, j_min=self.j_min + n, j_max=self.j_max + n)


@dataclass
class NormReport:
    """A weighted norm with its per-scale contributions.

    ``per_j`` holds ``(j, w_j * ||f||_j)`` pairs, ``per_cell`` (when requested)
    maps j to ``(k array, cell norms)``.  ``truncated`` records that the
    function was not negligible at the edge of the grid box or had no hint.
    """

    value: float
    per_j: list
    r: float
    per_cell: Optional[dict] = None
    truncated: bool = False
    boundary_flag: bool = field(init=False)

    def __post_init__(self):
        contrib = [c for _, c in self.per_j]
        top = max(contrib, default=0.0)
        self.boundary_flag = bool(
            top > 0 and (contrib[0] > 0.01 * top or contrib[-1] > 0.01 * top))

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "per_j": [[int(j), float(c)] for j, c in self.per_j],
            "boundary_flag": self.boundary_flag,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def cells_csv(self) -> str:
        if not self.per_cell:
            raise ValueError("report was computed without per-cell data")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        d = next(iter(self.per_cell.values()))[0].shape[1]
        ks = ["k"] if d == 1 else [f"k{i + 1}" for i in range(d)]
        writer.writerow(["j", *ks, "lp"])
        for j, (kk, vals) in self.per_cell.items():
            for krow, v in zip(kk, vals):
                writer.writerow([j, *(int(x) for x in krow), repr(float(v))])
        return buf.getvalue()


def _lq(values, q) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.sum(values ** q) ** (1.0 / q))


def aggregate(per_j, r, per_cell=None, truncated=False) -> NormReport:
    return NormReport(_lq([c for _, c in per_j], r), list(per_j), r, per_cell, truncated)


def _defaults(f, pou, grid):
    if pou is None:
        pou = build_pou(f.dim)
    if grid is None:
        grid = GridSpec(d=f.dim)
    if f.dim != grid.d or pou.d != grid.d:
        raise ValueError("function, partition and grid dimensions differ")
    return pou, grid


def mod_norm_cells(f: SpectralFunction, p: float, q: float, j: int,
                   pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None):
    """Per-cell norms ``||psi_{j,k}(D) f||_{L^p}`` as ``(k array, values, plan)``."""
    _check_exponent("p", p)
    _check_exponent("q", q)
    pou, grid = _defaults(f, pou, grid)
    ks, vals, plan = _cells.cell_lp(f, pou, grid, j, p, q)
    if len(ks) == 0 and not f.is_zero:
        raise ValueError(f"no frequency cell at scale {j} meets the grid box")
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite cell norm")
    return ks, vals, plan


def mod_norm(f: SpectralFunction, p: float, q: float, j: int = 0,
             pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None) -> float:
    """``(sum_k ||psi_{j,k}(D) f||_{L^p}^q)^(1/q)``; j = 0 is the unscaled norm."""
    if f.is_zero:
        return 0.0
    _, vals, _ = mod_norm_cells(f, p, q, j, pou, grid)
    return _lq(vals, q)


def frak_norm(f: SpectralFunction, spec: NormSpec, pou: Optional[PartitionOfUnity] = None,
              grid: Optional[GridSpec] = None, per_cell: bool = False) -> NormReport:
    """``l^r_j`` of ``w_j ||f||_{M^{p,q}_[j]}`` over ``spec.scales``."""
    pou, grid = _defaults(f, pou, grid)
    if not is_good(spec.weight, spec.p, spec.q, f.dim).good:
        warnings.warn("weight does not satisfy the goodness condition for these exponents",
                      stacklevel=2)
    per_j, cells, truncated = [], {}, False
    for j in spec.scales:
        wj = spec.weight(j)
        if f.is_zero or wj == 0:
            per_j.append((j, 0.0))
            continue
        ks, vals, plan = mod_norm_cells(f, spec.p, spec.q, j, pou, grid)
        truncated |= plan.clipped
        per_j.append((j, wj * _lq(vals, spec.q)))
        if per_cell:
            cells[j] = (ks, vals)
    return aggregate(per_j, spec.r, cells if per_cell else None, truncated)


def frak_norm_general_weight_scaling_check(f: SpectralFunction, spec: NormSpec, j0: int,
                                           pou: Optional[PartitionOfUnity] = None,
                                           grid: Optional[GridSpec] = None):
    """Both sides of the weight-translation scaling law for ``f(2**j0 x)``.

    The left side is computed for the dilated function on ``grid.dilated(j0)``
    with the scale window moved by j0, the right side for f under the weight
    translated by j0.
    """
    pou, grid = _defaults(f, pou, grid)
    lhs = frak_norm(dilate_dyadic(f, j0), spec.shifted(j0), pou, grid.dilated(j0)).value
    moved = replace(spec, weight=shift(spec.weight, j0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rhs = 2.0 ** (-j0 * f.dim / spec.p) * frak_norm(f, moved, pou, grid).value
    return lhs, rhs


def duality_pairing(f: SpectralFunction, g: SpectralFunction, w: VectorWeight,
                    w_dual: VectorWeight, spec: NormSpec,
                    pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None,
                    conjugate: bool = False) -> complex:
    """``sum_j w_j w'_j sum_k int (psi_{j,k}(D) f)(psi_{j,k}(D) g) dx``.

    Bilinear by default; ``conjugate=True`` conjugates the second factor.
    """
    pou, grid = _defaults(f, pou, grid)
    if g.dim != f.dim:
        raise ValueError("dimension mismatch")
    terms = []
    for j in spec.scales:
        ww = w(j) * w_dual(j)
        if ww == 0:
            continue
        _, vals = _cells.cell_pairing(f, g, pou, grid, j, conjugate)
        if not np.all(np.isfinite(vals)):
            raise ValueError("non-finite cell pairing")
        terms.append(ww * np.sum(vals))
    return complex(np.sum(np.asarray(terms, dtype=complex))) if terms else 0j


@dataclass
class DecayProfile:
    norms: dict
    slope: float
    plateau: float


def decay_profile(f: SpectralFunction, p: float, q: float, j_range,
                  pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None,
                  fit_max: int = -4, plateau_min: int = 4) -> DecayProfile:
    """``mod_norm`` over ``j_range`` with the low-scale log2 slope and the
    smallest value over ``j >= plateau_min``.
    """
    j_min, j_max = j_range
    norms = {j: mod_norm(f, p, q, j, pou, grid) for j in range(j_min, j_max + 1)}
    fit = [j for j in norms if j <= fit_max and norms[j] > 0]
    slope = math.nan
    if len(fit) >= 2:
        slope = float(np.polyfit(fit, np.log2([norms[j] for j in fit]), 1)[0])
    high = [norms[j] for j in norms if j >= plateau_min]
    plateau = min(high) if high else math.nan
    return DecayProfile(norms, slope, plateau)


def expected_low_slope(p: float, q: float, d: int = 1) -> float:
    """Log2 slope ``d (1/p' - 1/q)`` of the low-scale norms of a Schwartz function."""
    pp = conjugate_exponent(p)
    return d * ((0.0 if math.isinf(pp) else 1.0 / pp) - 1.0 / q)


def inclusion_ratio(f: SpectralFunction, small: NormSpec, large: NormSpec,
                    pou: Optional[PartitionOfUnity] = None, grid: Optional[GridSpec] = None) -> float:
    """``frak_norm(f, large) / frak_norm(f, small)``: the empirical constant of a nesting.

    No inequality is asserted; for the exponent p the constant depends on
    local embeddings of band-limited pieces.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        num = frak_norm(f, large, pou, grid).value
        den = frak_norm(f, small, pou, grid).value
    if den == 0:
        return 0.0 if num == 0 else math.inf
    return num / den
