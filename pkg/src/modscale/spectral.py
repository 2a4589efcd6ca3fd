"""Frequency-side function representation, Fourier conventions and quadrature.

Functions are stored as evaluable rules for their Fourier transform,

    fhat(xi) = int f(x) exp(-2 pi i x.xi) dx,

so that multipliers, dilations and projections compose exactly.  Discretization
only enters inside the norm quadratures, on lattices described by `GridSpec`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
import scipy.fft as sfft

Rule = Callable[[np.ndarray], np.ndarray]

MAX_AXIS_EXPONENT = 26
MAX_LATTICE_POINTS = 2**26


def japanese_bracket(x):
    """<x> = (1 + |x|^2)^(1/2); the last axis is the vector axis for arrays."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return math.sqrt(1.0 + float(x) ** 2)
    return np.sqrt(1.0 + np.sum(x * x, axis=-1))


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box ``[lo, hi]`` in frequency space."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners have different dimensions")

    @classmethod
    def cube(cls, lo, hi, d):
        return cls((float(lo),) * d, (float(hi),) * d)

    @property
    def dim(self):
        return len(self.lo)

    def scaled(self, factor):
        lo = tuple(factor * v for v in self.lo)
        hi = tuple(factor * v for v in self.hi)
        if factor < 0:
            lo, hi = hi, lo
        return Box(lo, hi)

    def intersect(self, other: Optional["Box"]) -> "Box":
        if other is None:
            return self
        lo = tuple(max(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(min(a, b) for a, b in zip(self.hi, other.hi))
        return Box(lo, hi)

    def hull(self, other: "Box") -> "Box":
        lo = tuple(min(a, b) for a, b in zip(self.lo, other.lo))
        hi = tuple(max(a, b) for a, b in zip(self.hi, other.hi))
        return Box(lo, hi)

    def is_empty(self):
        return any(h < l for l, h in zip(self.lo, self.hi))

    def contains(self, xi):
        xi = np.asarray(xi, dtype=float)
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return np.all((xi >= lo) & (xi <= hi), axis=-1)


@dataclass(frozen=True)
class Decay:
    """Envelope bound ``|fhat(xi)| <= amplitude * profile(|xi| / scale)``.

    ``kind="gaussian"``: profile(s) = exp(-exponent * s^2).
    ``kind="power"``:    profile(s) = (1 + s^2)^(-exponent / 2).
    """

    kind: str
    amplitude: float
    scale: float
    exponent: float

    def __post_init__(self):
        if self.kind not in ("gaussian", "power"):
            raise ValueError(f"unknown decay kind {self.kind!r}")
        if self.scale <= 0 or self.exponent <= 0:
            raise ValueError("decay scale and exponent must be positive")

    def radius(self, tol):
        """Radius beyond which the envelope is below ``tol * amplitude``."""
        if tol >= 1.0:
            return 0.0
        if self.kind == "gaussian":
            return self.scale * math.sqrt(math.log(1.0 / tol) / self.exponent)
        return self.scale * math.sqrt(tol ** (-2.0 / self.exponent) - 1.0)

    def rescaled(self, freq_factor, amp_factor=1.0):
        return replace(self, scale=self.scale * freq_factor, amplitude=self.amplitude * amp_factor)


@dataclass(frozen=True)
class SpectralFunction:
    """A function on R^d held through its Fourier transform.

    ``rule`` maps an array of frequencies of shape ``(..., d)`` to complex
    amplitudes of shape ``(...)``.  It must be deterministic and, when a
    ``support`` box is given, vanish outside it.
    """

    rule: Rule
    dim: int
    support: Optional[Box] = None
    decay: Optional[Decay] = None
    name: str = "f"
    is_zero: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.support is not None and self.support.dim != self.dim:
            raise ValueError("support box dimension mismatch")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        if xi.ndim == 0 or xi.shape[-1] != self.dim:
            if self.dim == 1:
                xi = xi[..., None]
            else:
                raise ValueError(f"expected points with trailing axis {self.dim}")
        return np.asarray(self.rule(xi), dtype=complex)

    # linear structure -------------------------------------------------
    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        if not isinstance(other, SpectralFunction):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = self.rule, other.rule
        support = None
        if self.support is not None and other.support is not None:
            support = self.support.hull(other.support)
        return SpectralFunction(
            lambda xi: a(xi) + b(xi),
            self.dim,
            support=support,
            decay=_combine_decay(self.decay, other.decay),
            name=f"({self.name}+{other.name})",
        )

    def __mul__(self, c) -> "SpectralFunction":
        c = complex(c)
        if c == 0:
            return zero(self.dim)
        rule = self.rule
        decay = self.decay.rescaled(1.0, abs(c)) if self.decay is not None else None
        return SpectralFunction(
            lambda xi: c * rule(xi), self.dim, support=self.support, decay=decay,
            name=f"{c:g}*{self.name}", is_zero=self.is_zero,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def essential_box(self, tol: float) -> Optional[Box]:
        """Box outside which ``|fhat| <= tol * amplitude`` (None if unknown)."""
        box = self.support
        if self.decay is not None:
            r = self.decay.radius(tol)
            ball = Box.cube(-r, r, self.dim)
            box = ball if box is None else box.intersect(ball)
        return box


def _combine_decay(a: Optional[Decay], b: Optional[Decay]) -> Optional[Decay]:
    if a is None or b is None or a.kind != b.kind:
        return None
    # a common envelope: widest scale, slowest exponent, summed amplitude
    return Decay(a.kind, a.amplitude + b.amplitude, max(a.scale, b.scale), min(a.exponent, b.exponent))


def zero(d=1) -> SpectralFunction:
    return SpectralFunction(
        lambda xi: np.zeros(xi.shape[:-1], dtype=complex), d,
        support=Box.cube(0.0, 0.0, d), name="0", is_zero=True,
    )


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class GridSpec:
    """Dyadic frequency lattice and its dual spatial lattice.

    The frequency lattice has spacing ``2**-a`` and covers ``[-2**b, 2**b)^d``
    with the sample points offset by half a spacing, so ``xi = 0`` is never a
    node.  ``N = 2**(a+b+1)`` points per axis; the spatial lattice has spacing
    ``2**(-b-1)`` and period ``2**a``.

    ``cell_exponent`` and ``oversample`` only affect the cell-wise norm
    quadrature: cells narrower than ``2**(cell_exponent - a + 1)`` receive
    ``2**(cell_exponent+1)`` nodes per axis and every cell transform is
    zero-padded by ``2**oversample``.  ``tail_tol`` controls which cells are
    dropped because the function is negligible on them.
    """

    d: int = 1
    a: int = 6
    b: int = 6
    cell_exponent: int = 5
    oversample: int = 2
    tail_tol: float = 1e-16

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if self.a < 1 or self.b < 1:
            raise ValueError(f"grid exponents must be >= 1, got a={self.a}, b={self.b}")
        if self.a + self.b + 1 > MAX_AXIS_EXPONENT:
            raise ValueError(
                f"a+b+1 = {self.a + self.b + 1} exceeds the memory guard {MAX_AXIS_EXPONENT}"
            )
        if self.cell_exponent < 1 or self.oversample < 0:
            raise ValueError("cell_exponent must be >= 1 and oversample >= 0")

    @property
    def N(self) -> int:
        return 2 ** (self.a + self.b + 1)

    @property
    def dxi(self) -> float:
        return 2.0 ** -self.a

    @property
    def dx(self) -> float:
        return 2.0 ** (-self.b - 1)

    @property
    def extent(self) -> float:
        """Half-width ``2**b`` of the frequency box."""
        return 2.0 ** self.b

    @property
    def box(self) -> Box:
        return Box.cube(-self.extent, self.extent, self.d)

    def freq_axis(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2 + 0.5) * self.dxi

    def space_axis(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2) * self.dx

    def dilated(self, j0: int) -> "GridSpec":
        """Grid carrying ``f(2**j0 x)`` with the same node pattern: (a-j0, b+j0)."""
        return replace(self, a=self.a - j0, b=self.b + j0)

    def rescaled(self, j: int) -> "GridSpec":
        """Grid carrying ``delta_j f``: (a+j, b-j)."""
        return self.dilated(-j)

    def refined(self) -> "GridSpec":
        return replace(self, a=self.a + 1, b=self.b + 1, cell_exponent=self.cell_exponent + 1)


# ---------------------------------------------------------------------------
# test functions

def _gaussian(d):
    return SpectralFunction(
        lambda xi: np.exp(-np.pi * np.sum(xi * xi, axis=-1)) + 0j, d,
        decay=Decay("gaussian", 1.0, 1.0, math.pi), name="gaussian",
    )


def _cube_indicator(d, lo=-0.5, hi=0.5):
    def rule(xi):
        inside = np.all((xi >= lo) & (xi < hi), axis=-1)
        return inside.astype(complex)

    return SpectralFunction(rule, d, support=Box.cube(lo, hi, d), name="cube-indicator")


def _sinc_dual(d):
    # fhat = prod sinc(xi_i); f is the indicator of [-1/2, 1/2]^d
    return SpectralFunction(
        lambda xi: np.prod(np.sinc(xi), axis=-1) + 0j, d,
        decay=Decay("power", 1.0, 1.0 / math.pi, 1.0), name="sinc-dual",
    )


def _counterexample_g(d):
    def rule(xi):
        inside = np.all((xi > 0.0) & (xi < 0.5), axis=-1)
        r = np.sqrt(np.sum(xi * xi, axis=-1))
        out = np.zeros(r.shape, dtype=complex)
        # |ln r| > 0 on the support since r < sqrt(d)/2 only matters for d >= 4
        ok = inside & (r > 0) & (np.abs(np.log(np.where(r > 0, r, 1.0))) > 0)
        rr = r[ok]
        out[ok] = rr ** (-d / 2.0) * np.abs(np.log(rr)) ** -0.5
        return out

    return SpectralFunction(rule, d, support=Box.cube(0.0, 0.5, d), name="counterexample-g")


def _smooth_box_bump(xi, lo, hi):
    from modscale.partition import window_1d

    s = (xi - np.asarray(lo)) / (np.asarray(hi) - np.asarray(lo))
    return np.prod(window_1d(2.0 * s - 1.0), axis=-1)


def _random_bandlimited(d, seed=0, box=(-2.0, 2.0), modes=3):
    lo, hi = box
    lo_v = (float(lo),) * d
    hi_v = (float(hi),) * d
    rng = np.random.default_rng(seed)
    shape = (2 * modes + 1,) * d
    coef = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    freqs = np.stack(np.meshgrid(*[np.arange(-modes, modes + 1)] * d, indexing="ij"), axis=-1)
    freqs = freqs.reshape(-1, d).astype(float)
    coef = coef.reshape(-1)
    width = np.asarray(hi_v) - np.asarray(lo_v)

    def rule(xi):
        u = (xi - np.asarray(lo_v)) / width
        phase = np.exp(2j * np.pi * (u @ freqs.T))
        return _smooth_box_bump(xi, lo_v, hi_v) * (phase @ coef)

    return SpectralFunction(rule, d, support=Box(lo_v, hi_v), name=f"random-bandlimited[{seed}]")


def _spatial_bump(d, nodes=2048):
    # f(x) = prod psi_1(x_i): compact spatial support [-1, 1]^d, transform by
    # trapezoid quadrature (spectrally accurate for a smooth compact integrand)
    from modscale.partition import window_1d

    x = (np.arange(nodes) + 0.5) * (2.0 / nodes) - 1.0
    wx = window_1d(x) * (2.0 / nodes)

    def rule(xi):
        flat = xi.reshape(-1, d)
        out = np.ones(flat.shape[0], dtype=complex)
        for i in range(d):
            # row blocks keep the cosine table small
            for s in range(0, flat.shape[0], 4096):
                out[s:s + 4096] *= np.cos(2 * np.pi * np.outer(flat[s:s + 4096, i], x)) @ wx
        return out.reshape(xi.shape[:-1])

    return SpectralFunction(rule, d, name="spatial-bump")


SYNTHESIZERS = {
    "gaussian": _gaussian,
    "cube-indicator": _cube_indicator,
    "sinc-dual": _sinc_dual,
    "counterexample-g": _counterexample_g,
    "random-bandlimited": _random_bandlimited,
    "spatial-bump": _spatial_bump,
}


def synthesize(kind: str, d: int = 1, **params) -> SpectralFunction:
    """Build a named test function.

    Kinds: gaussian (fhat = exp(-pi |xi|^2)), cube-indicator (``lo``, ``hi``),
    sinc-dual (fhat = prod sinc, i.e. f = 1 on [-1/2,1/2]^d), counterexample-g,
    random-bandlimited (``seed``, ``box=(lo, hi)``, ``modes``) and
    spatial-bump (f = psi in space, support [-1,1]^d).

    counterexample-g returns 0 at frequencies with a zero coordinate.
    """
    if kind == "zero":
        return zero(d)
    try:
        factory = SYNTHESIZERS[kind]
    except KeyError:
        raise ValueError(f"unknown test function kind {kind!r}") from None
    if d < 1:
        raise ValueError("dimension must be positive")
    return factory(d, **params)


# ---------------------------------------------------------------------------
# operators


def dilate_dyadic(f: SpectralFunction, j0: int) -> SpectralFunction:
    """Frequency image of ``f(2**j0 x)``: ``xi -> 2**(-j0 d) fhat(xi / 2**j0)``."""
    if j0 == 0:
        return f
    lam = 2.0 ** j0
    inv = 2.0 ** -j0
    amp = 2.0 ** (-j0 * f.dim)
    rule = f.rule
    return SpectralFunction(
        lambda xi: amp * rule(xi * inv), f.dim,
        support=f.support.scaled(lam) if f.support is not None else None,
        decay=f.decay.rescaled(lam, amp) if f.decay is not None else None,
        name=f"dil[{j0}]{f.name}", is_zero=f.is_zero,
    )


def delta_op(f: SpectralFunction, j: int) -> SpectralFunction:
    """``delta_j f(x) = 2**(-jd) f(2**-j x)``, i.e. ``xi -> fhat(2**j xi)``."""
    if j == 0:
        return f
    s = 2.0 ** j
    inv = 2.0 ** -j
    rule = f.rule
    return SpectralFunction(
        lambda xi: rule(xi * s), f.dim,
        support=f.support.scaled(inv) if f.support is not None else None,
        decay=f.decay.rescaled(inv) if f.decay is not None else None,
        name=f"delta[{j}]{f.name}", is_zero=f.is_zero,
    )


def apply_multiplier(f: SpectralFunction, m: Callable, *, bound: Optional[float] = None,
                     support: Optional[Box] = None, name: str = "m") -> SpectralFunction:
    """Pointwise product ``xi -> m(xi) fhat(xi)``.

    ``bound`` (a sup bound of ``|m|``) keeps the decay hint; ``support`` is
    intersected with the support hint.
    """
    rule = f.rule
    if np.isscalar(m):
        c = m
        return f * c
    new_support = f.support
    if support is not None:
        new_support = support if new_support is None else new_support.intersect(support)
    decay = None
    if f.decay is not None and bound is not None:
        decay = f.decay.rescaled(1.0, bound)
    return SpectralFunction(
        lambda xi: m(xi) * rule(xi), f.dim, support=new_support, decay=decay,
        name=f"{name}*{f.name}", is_zero=f.is_zero,
    )


# ---------------------------------------------------------------------------
# global lattice quadrature


def _check_lattice(f: SpectralFunction, grid: GridSpec):
    if f.dim != grid.d:
        raise ValueError(f"function dimension {f.dim} does not match grid dimension {grid.d}")
    if grid.N ** grid.d > MAX_LATTICE_POINTS:
        raise ValueError(f"lattice with {grid.N}^{grid.d} points exceeds the memory guard")


def sample_frequency(f: SpectralFunction, grid: GridSpec) -> np.ndarray:
    """Samples of fhat on the offset frequency lattice, axis 0 slowest."""
    _check_lattice(f, grid)
    axes = [grid.freq_axis()] * grid.d
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    vals = f(pts)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"non-finite sample of {f.name} on the lattice")
    return vals


def _axis_phases(N):
    n = np.arange(N)
    pre = np.where(n % 2 == 0, 1.0, -1.0)  # exp(-i pi m)
    u = n - N // 2
    post = np.exp(1j * np.pi * u * (1 - N) / N)
    return pre, post


def samples_to_space(fhat: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Inverse transform of lattice samples: complex f(x_n) on the spatial lattice."""
    N = grid.N
    pre, post = _axis_phases(N)
    c = np.array(fhat, dtype=complex)
    for ax in range(grid.d):
        shape = [1] * grid.d
        shape[ax] = N
        c *= pre.reshape(shape)
    out = sfft.ifftn(c, norm="forward")
    for ax in range(grid.d):
        shape = [1] * grid.d
        shape[ax] = N
        out *= post.reshape(shape)
    return out * grid.dxi ** grid.d


def spatial_samples(f: SpectralFunction, grid: GridSpec) -> np.ndarray:
    return samples_to_space(sample_frequency(f, grid), grid)


def _riemann_lp(values: np.ndarray, p: float, weight: float) -> float:
    mag2 = values.real ** 2 + values.imag ** 2
    if p == 2:
        s = np.sum(mag2)
    else:
        s = np.sum(mag2 ** (p / 2.0))
    return float((s * weight) ** (1.0 / p))


def lp_norm(f: SpectralFunction, p: float, grid: GridSpec) -> float:
    """Riemann-sum ``L^p`` norm of f on the spatial lattice of ``grid``."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if f.is_zero:
        _check_lattice(f, grid)
        return 0.0
    vals = spatial_samples(f, grid)
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite spatial sample")
    return _riemann_lp(vals, p, grid.dx ** grid.d)


def frequency_l2_sq(f: SpectralFunction, grid: GridSpec) -> float:
    """``dxi^d * sum |fhat|^2`` over the lattice (the Plancherel partner of lp_norm)."""
    vals = sample_frequency(f, grid)
    return float(np.sum(np.abs(vals) ** 2) * grid.dxi ** grid.d)
