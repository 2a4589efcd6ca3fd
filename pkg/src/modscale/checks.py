"""Named check suites: each runs a group of identities, inequalities and rate
properties at desk scale and reports measured values against limits.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from modscale import amalgam, norms, schrodinger, stft
from modscale.partition import FrequencyCell, PartitionOfUnity, build_pou, project_cell, rho, validate_pou
from modscale.spectral import (GridSpec, SpectralFunction, delta_op, dilate_dyadic, lp_norm,
                               synthesize, zero)
from modscale.weights import (conjugate_exponent, fx_weight, is_good, power_weight, shift,
                              weight_p_p0, weight_w_p)

DEFAULT_TOLERANCES = {
    "pou": 1e-12,
    "rho": 1e-15,
    "corrupt": 0.1,
    "scaling": 1e-10,
    "lp_scaling": 1e-12,
    "dilation": 1e-10,
    "z0": 1e-8,
    "z0_static": 1e-10,
    "z1": 1e-10,
    "mass": 1e-12,
    "group": 1e-12,
    "chain": 1e-9,
    "spread": 8.0,
    "slope": 0.15,
    "bounded": 2.0,
    "hy": 1e-12,
    "hy_equal": 1e-10,
    "embed": 1e-10,
    "fx": 1e-12,
    "fx_scaling": 1e-10,
    "stability": 0.10,
    "harmonic": 0.30,
    "strict": 0.95,
    "flat_lo": 0.8,
    "flat_hi": 1.25,
    "cauchy": 0.95,
    "plateau": 0.9,
    "decay": 0.10,
    "a2": 1e-8,
    "stft_norm": 1e-8,
    "bilinear": 1e-12,
    "holder": 1e-10,
    "triangle": 1e-10,
    "homogeneity": 1e-12,
}


@dataclass
class CheckConfig:
    """Grid, scale window and tolerances shared by the suites.

    ``quick`` shrinks every sweep and family; it is meant for smoke and
    reproducibility runs, not for acceptance.
    """

    d: int = 1
    a: int = 6
    b: int = 6
    j_min: int = -12
    j_max: int = 8
    seed: int = 0
    family: int = 10
    quick: bool = False
    tolerances: dict = field(default_factory=dict)

    def tol(self, key):
        return self.tolerances.get(key, DEFAULT_TOLERANCES[key])

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.d, self.a, self.b)

    @classmethod
    def from_dict(cls, obj: dict) -> "CheckConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**obj)
        bad = set(cfg.tolerances) - set(DEFAULT_TOLERANCES)
        if bad:
            raise ValueError(f"unknown tolerance keys: {sorted(bad)}")
        return cfg

    @classmethod
    def load(cls, path) -> "CheckConfig":
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"config is not valid JSON: {exc}") from None
        return cls.from_dict(obj)


@dataclass
class CheckResult:
    name: str
    criterion: int
    measured: float
    relation: str       # "<=", ">=" or "in"
    limit: object
    detail: str = ""

    @property
    def passed(self) -> bool:
        m = self.measured
        if not math.isfinite(m):
            return False
        if self.relation == "<=":
            return m <= self.limit
        if self.relation == ">=":
            return m >= self.limit
        lo, hi = self.limit
        return lo <= m <= hi

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f"[{self.limit[0]!r}, {self.limit[1]!r}]" if self.relation == "in" else repr(self.limit)
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} [{self.criterion}] {self.name}: {self.measured!r} {self.relation} {lim}{tail}"


@dataclass
class SuiteReport:
    suite: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [dict(asdict(r), passed=r.passed) for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def text(self) -> str:
        head = f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + r.line() for r in self.results])


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def random_family(n: int, seed: int = 0, d: int = 1):
    return [synthesize("random-bandlimited", d, seed=seed + i) for i in range(n)]


# ---------------------------------------------------------------------------
# suites


def suite_pou(cfg: CheckConfig):
    out = []
    dev1 = validate_pou(build_pou(1), GridSpec(1, 8, 4))
    out.append(CheckResult("partition identity d=1 (a=8,b=4)", 1, dev1, "<=", cfg.tol("pou")))
    dev2 = validate_pou(build_pou(2), GridSpec(2, 6, 3) if not cfg.quick else GridSpec(2, 4, 2))
    out.append(CheckResult("partition identity d=2", 1, dev2, "<=", cfg.tol("pou")))
    t = np.linspace(0.0, 1.0, 200)
    comp = float(np.max(np.abs(rho(t) + rho(1.0 - t) - 1.0)))
    out.append(CheckResult("rho(t) + rho(1-t) = 1", 1, comp, "<=", cfg.tol("rho")))
    bad = PartitionOfUnity(1, generator=lambda s: rho(s) ** 2)
    out.append(CheckResult("corrupted generator is detected", 1,
                           validate_pou(bad, GridSpec(1, 8, 4)), ">=", cfg.tol("corrupt")))
    # reconstruction from the cells of one scale
    f = synthesize("random-bandlimited", cfg.d, seed=cfg.seed)
    pou = build_pou(cfg.d)
    j, K = -1, 6
    xi = np.linspace(-(K - 1) * 2.0 ** j, (K - 1) * 2.0 ** j, 257)[:, None]
    total = sum(project_cell(f, pou, FrequencyCell(j, (k,)))(xi) for k in range(-K, K + 1))
    recon = float(np.max(np.abs(total - f(xi))))
    out.append(CheckResult("sum of cell projections reproduces fhat", 1, recon, "<=", cfg.tol("pou")))
    return out


def _x6_case(f, grid, spec, j0s):
    w = spec.weight
    beta = math.log2(w(1))
    base = norms.frak_norm(f, spec, grid=grid).value
    worst = 0.0
    for j0 in j0s:
        lhs = norms.frak_norm(dilate_dyadic(f, j0), spec.shifted(j0), grid=grid.dilated(j0)).value
        worst = max(worst, _rel(lhs, 2.0 ** (j0 * (beta - f.dim / spec.p)) * base))
    return worst


def suite_scaling(cfg: CheckConfig):
    out = []
    d = cfg.d
    quick = cfg.quick
    j0s = [-1, 1] if quick else [j for j in range(-3, 4) if j != 0]
    grid = GridSpec(d, 5, 4) if quick else cfg.grid
    jr = (-4, 4) if quick else (cfg.j_min, cfg.j_max)
    spec = norms.NormSpec(4, 4, 4, weight_w_p(4, d), *jr)
    out.append(CheckResult("multiplicative scaling, gaussian", 2,
                           _x6_case(synthesize("gaussian", d), grid, spec, j0s), "<=", cfg.tol("scaling")))
    coarse = replace(grid, cell_exponent=4, oversample=1)
    spec_s = replace(spec, j_min=max(jr[0], -6), j_max=min(jr[1], 6))
    out.append(CheckResult("multiplicative scaling, sinc-dual", 2,
                           _x6_case(synthesize("sinc-dual", d), coarse, spec_s, j0s), "<=", cfg.tol("scaling")))

    g = synthesize("gaussian", d)
    w = power_weight(1, -0.25, 0.25)
    good = is_good(w, 4, 4, d).good
    worst = 0.0
    for j0 in (1, 2):
        lhs, rhs = norms.frak_norm_general_weight_scaling_check(g, replace(spec, weight=w), j0, grid=grid)
        worst = max(worst, _rel(lhs, rhs))
    out.append(CheckResult("weight-translation scaling", 3, worst, "<=", cfg.tol("scaling"),
                           f"weight good: {good}"))

    worst = 0.0
    for j0 in j0s:
        for p in (1, 2, 4):
            lhs = lp_norm(dilate_dyadic(g, j0), p, grid.dilated(j0))
            worst = max(worst, _rel(lhs, 2.0 ** (-j0 * d / p) * lp_norm(g, p, grid)))
    out.append(CheckResult("L^p scaling on corresponding grids", 2, worst, "<=", cfg.tol("lp_scaling")))

    wa = power_weight(1, 0.25 * d, 0.25 * d)
    worst = 0.0
    with warnings.catch_warnings():
        # the scaling law needs only multiplicativity, not goodness
        warnings.simplefilter("ignore")
        base = amalgam.frak_famalgam_norm(g, 4, 4, 4, wa, jr, grid=grid).value
        for j0 in j0s:
            lhs = amalgam.frak_famalgam_norm(dilate_dyadic(g, j0), 4, 4, 4, wa, (jr[0] + j0, jr[1] + j0),
                                             grid=grid.dilated(j0)).value
            expo = math.log2(wa(1)) - d / conjugate_exponent(4)
            worst = max(worst, _rel(lhs, 2.0 ** (j0 * expo) * base))
    out.append(CheckResult("Fourier-amalgam scaling", 11, worst, "<=", cfg.tol("scaling")))
    return out


def suite_zchain(cfg: CheckConfig):
    out = []
    d = cfg.d
    g = synthesize("gaussian", d)
    grid = GridSpec(d, 5, 4) if cfg.quick else cfg.grid
    js = range(-1, 2) if cfg.quick else range(-3, 4)
    worst = 0.0
    for p, q in ((4, 4), (1, 2)):
        pp = conjugate_exponent(p)
        inv = 0.0 if math.isinf(pp) else 1.0 / pp
        for j in js:
            direct = norms.mod_norm(g, p, q, j, grid=grid)
            lhs = norms.mod_norm(delta_op(g, j), p, q, 0, grid=grid.rescaled(j))
            worst = max(worst, _rel(lhs, 2.0 ** (-j * d * inv) * direct))
    out.append(CheckResult("dilation identity ||delta_j f|| = 2^(-jd/p') ||f||_[j]", 4, worst, "<=",
                           cfg.tol("dilation")))

    cells = [(-2, 3), (1, 0), (2, -1)]
    if cfg.quick:
        cells = cells[1:2]
    z0 = max(schrodinger.verify_z0(g, 0.5, j, (k,) * d, grid=grid) for j, k in cells)
    out.append(CheckResult("cell propagator identity, t=0.5", 5, z0, "<=", cfg.tol("z0")))
    z0s = max(schrodinger.verify_z0(g, 0.0, j, (k,) * d, grid=grid) for j, k in cells)
    out.append(CheckResult("cell propagator identity, t=0", 5, z0s, "<=", cfg.tol("z0_static")))

    worst = 0.0
    for j in (range(-1, 2) if cfg.quick else range(-2, 3)):
        lhs, rhs = schrodinger.verify_z1(g, 1.0, 4, 4, j, grid=grid)
        worst = max(worst, _rel(lhs, rhs))
    out.append(CheckResult("scaled propagator norm identity, t=1", 5, worst, "<=", cfg.tol("z1")))

    worst = 0.0
    base = lp_norm(g, 2, grid)
    for e in range(-4, 5):
        worst = max(worst, _rel(lp_norm(schrodinger.propagate(g, 2.0 ** e), 2, grid), base))
    out.append(CheckResult("L^2 conservation", 5, worst, "<=", cfg.tol("mass")))

    rng = np.random.default_rng(cfg.seed)
    xi = rng.uniform(-2, 2, size=(100, d))
    worst = 0.0
    for s, t in ((0.3, 0.7), (-1.25, 0.5), (2.0, -0.125)):
        lhs = schrodinger.propagate(schrodinger.propagate(g, s), t)(xi)
        rhs = schrodinger.propagate(g, s + t)(xi)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    out.append(CheckResult("propagator group law", 5, worst, "<=", cfg.tol("group")))

    # the three identities agree on the same quantity
    worst = 0.0
    t = 0.75
    for j in (range(-1, 2) if cfg.quick else range(-2, 3)):
        p, q = 4, 4
        inv = 1.0 / conjugate_exponent(p)
        direct = norms.mod_norm(schrodinger.propagate(g, t), p, q, j, grid=grid)
        via_dilation = 2.0 ** (j * d * inv) * norms.mod_norm(
            delta_op(schrodinger.propagate(g, t), j), p, q, 0, grid=grid.rescaled(j))
        via_z1 = schrodinger.verify_z1(g, t, p, q, j, grid=grid)[1]
        worst = max(worst, _rel(direct, via_dilation), _rel(direct, via_z1), _rel(via_dilation, via_z1))
    out.append(CheckResult("identity chain consistency", 5, worst, "<=", cfg.tol("chain")))
    return out


def _stft_family(n, seed, d):
    fams = [synthesize("gaussian", d), synthesize("spatial-bump", d)]
    return (fams + random_family(max(0, n - 2), seed, d))[:n]


def suite_stft(cfg: CheckConfig):
    out = []
    d = 1
    grid = GridSpec(1, 4, 3) if cfg.quick else GridSpec(1, 5, 4)
    g = synthesize("gaussian", d)
    worst = max(stft.verify_a2(g, j, grid) for j in ((-1, 1) if cfg.quick else (-2, -1, 1, 2)))
    out.append(CheckResult("STFT dilation identity at aligned points", 10, worst, "<=", cfg.tol("a2")))
    v00 = abs(stft.stft_point(g, grid, 0.0, 0.0) - 2.0 ** -0.5)
    out.append(CheckResult("V_phi phi(0,0) = ||phi||^2", 10, v00, "<=", cfg.tol("stft_norm")))
    f1, f2 = random_family(2, cfg.seed, d)
    idx = np.arange(0, grid.N, 16)
    s12 = stft.stft(f1 + f2, grid, x_index=idx).values
    s1 = stft.stft(f1, grid, x_index=idx).values
    s2 = stft.stft(f2, grid, x_index=idx).values
    out.append(CheckResult("STFT additivity", 10, float(np.max(np.abs(s12 - s1 - s2))), "<=",
                           cfg.tol("bilinear")))

    fam = _stft_family(3 if cfg.quick else cfg.family, cfg.seed, d)

    def band(gr):
        r = [norms.mod_norm(f, 2, 2, 0, grid=gr) / stft.stft_mod_norm(f, 2, 2, 0, gr) for f in fam]
        return min(r), max(r)

    c1, c2 = band(grid)
    r1, r2 = band(grid.refined())
    drift = max(abs(r1 / c1 - 1.0), abs(r2 / c2 - 1.0))
    out.append(CheckResult("norm equivalence band stable under refinement", 10, drift, "<=",
                           cfg.tol("stability"), f"band [{c1:.6g}, {c2:.6g}]"))
    return out


def octave_masses(f: SpectralFunction, js):
    """``int_{2^j <= xi < 2^(j+1)} |fhat|^2`` by adaptive quadrature (d = 1)."""
    out = []
    for j in js:
        val, _ = integrate.quad(lambda x: abs(complex(f(np.array([[x]]))[0])) ** 2,
                                2.0 ** j, 2.0 ** (j + 1), epsabs=0, epsrel=1e-12, limit=200)
        out.append(val)
    return np.array(out)


def suite_embedding(cfg: CheckConfig):
    out = []
    d = cfg.d
    grid = GridSpec(d, 5, 4) if cfg.quick else cfg.grid
    jr = (-4, 4) if cfg.quick else (cfg.j_min, cfg.j_max)
    g = synthesize("gaussian", d)

    worst = -math.inf
    eq = 0.0
    for j in (-2, 0, 2):
        _, lhs, rhs = amalgam.hausdorff_young_scale(g, 4, j, grid=grid)
        worst = max(worst, float(np.max(lhs - rhs)))
        _, l2, r2 = amalgam.hausdorff_young_scale(g, 2, j, grid=grid)
        eq = max(eq, float(np.max(np.abs(l2 - r2))))
    out.append(CheckResult("cellwise Hausdorff-Young, p=4 (max lhs-rhs)", 7, worst, "<=", cfg.tol("hy")))
    out.append(CheckResult("cellwise Plancherel, p=2", 7, eq, "<=", cfg.tol("hy_equal")))

    fam = random_family(3 if cfg.quick else cfg.family, cfg.seed, d)
    worst = -math.inf
    fx_gap = 0.0
    for p, q in ((4, 4), (3, 4)):
        spec = norms.NormSpec(p, q, q, weight_w_p(p, d), *jr)
        for i, f in enumerate(fam):
            m = norms.frak_norm(f, spec, grid=grid).value
            fx = amalgam.fx_norm(f, p, q, jr, grid=grid)
            worst = max(worst, m - fx)
            if i < 3:
                via = amalgam.frak_famalgam_norm(f, conjugate_exponent(p), q, q, fx_weight(p, d), jr,
                                                 grid=grid).value
                fx_gap = max(fx_gap, _rel(fx, via))
    out.append(CheckResult("embedding into the FX side (max frak - fx)", 7, worst, "<=", cfg.tol("embed")))
    out.append(CheckResult("FX norm equals weighted Fourier amalgam", 11, fx_gap, "<=", cfg.tol("fx")))

    worst = 0.0
    base = amalgam.fx_norm(g, 4, 4, jr, grid=grid)
    for j0 in ((-1, 1) if cfg.quick else (-2, -1, 1, 2)):
        lhs = amalgam.fx_norm(dilate_dyadic(g, j0), 4, 4, (jr[0] + j0, jr[1] + j0), grid=grid.dilated(j0))
        worst = max(worst, _rel(lhs, 2.0 ** (-j0 * d / 2.0) * base))
    out.append(CheckResult("FX scaling exponent -d/2", 11, worst, "<=", cfg.tol("fx_scaling")))

    fam20 = random_family(4 if cfg.quick else 2 * cfg.family, cfg.seed + 100, d)
    spec = norms.NormSpec(4, 4, 4, weight_w_p(4, d), *jr)

    def top_ratio(gr):
        return max(norms.frak_norm(f, spec, grid=gr).value / lp_norm(f, 2, gr) for f in fam20)

    b0, b1 = top_ratio(grid), top_ratio(grid.refined())
    out.append(CheckResult("L^2 embedding ratio stable under refinement", 8, abs(b1 / b0 - 1.0), "<=",
                           cfg.tol("stability"), f"sup ratio {b0:.6g}"))

    if d == 1:
        cg = synthesize("counterexample-g", 1)
        js = np.arange(-30, -9)
        m2 = octave_masses(cg, js)
        inv = 1.0 / np.abs(js)
        c = float(np.sum(m2 * inv) / np.sum(inv * inv))
        misfit = float(np.max(np.abs(m2 / (c * inv) - 1.0)))
        out.append(CheckResult("octave L^2 masses follow c/|j|", 8, misfit, "<=", cfg.tol("harmonic"),
                               f"c = {c:.6g}"))
        lo = -14 if cfg.quick else -20
        coarse = GridSpec(1, cfg.a, cfg.b, 4, 1)
        rep = norms.frak_norm(cg, norms.NormSpec(4, 4, 4, weight_w_p(4, 1), lo, -10), grid=coarse)
        contrib = np.array([c for _, c in rep.per_j]) ** rep.r
        ratios = contrib[:-1] / contrib[1:]
        out.append(CheckResult("weighted octave contributions of g decay", 8, float(np.max(ratios)), "<=",
                               cfg.tol("strict")))
    return out


def _contributions(f, spec, grid):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = norms.frak_norm(f, spec, grid=grid)
    return np.array([c for _, c in rep.per_j])


def suite_sharpness(cfg: CheckConfig):
    out = []
    d = cfg.d
    p = q = r = 4
    g = synthesize("gaussian", d)
    pp = conjugate_exponent(p)
    threshold = power_weight(1, -0.5, -(d / pp - d / q))
    lo, hi = (-12, -6) if cfg.quick else (-20, -6)
    coarse = GridSpec(d, cfg.a, cfg.b, 4, 1)
    c = _contributions(g, norms.NormSpec(p, q, r, threshold, lo, hi), coarse)
    ratios = c[:-1] / c[1:]
    out.append(CheckResult("threshold weight: min consecutive ratio", 9, float(ratios.min()), ">=",
                           cfg.tol("flat_lo")))
    out.append(CheckResult("threshold weight: max consecutive ratio", 9, float(ratios.max()), "<=",
                           cfg.tol("flat_hi")))

    grid = GridSpec(d, 5, 4) if cfg.quick else cfg.grid
    jr = (-6, 6) if cfg.quick else (cfg.j_min, cfg.j_max)
    lp = lp_norm(g, p, grid)
    high = _contributions(g, norms.NormSpec(p, q, r, power_weight(1, 0, 0), 6, jr[1]), grid)
    out.append(CheckResult("unit weight: high-scale contributions / ||f||_p", 13, float(high.min() / lp),
                           ">=", cfg.tol("plateau")))

    good = [weight_w_p(4, d), power_weight(1, -0.3, -0.4), power_weight(2, -0.1, -0.35)]
    worst = 0.0
    margins = []
    for w in good:
        margins.append(is_good(w, p, q, d).margin)
        cw = _contributions(g, norms.NormSpec(p, q, r, w, *jr), grid) ** r
        low = cw[:4] / cw[1:5]          # adding octave j from j+1 downwards
        top = cw[-4:] / cw[-5:-1]       # adding octave j from j-1 upwards
        worst = max(worst, float(low.max()), float(top.max()))
    out.append(CheckResult("good weights: Cauchy increment ratio", 9, worst, "<=", cfg.tol("cauchy"),
                           f"min margin {min(margins):.3g}"))

    prof = norms.decay_profile(g, p, q, (-10 if cfg.quick else -16, jr[1]), grid=grid)
    want = norms.expected_low_slope(p, q, d)
    out.append(CheckResult("low-scale decay slope (relative error)", 13, abs(prof.slope / want - 1.0),
                           "<=", cfg.tol("decay"), f"slope {prof.slope:.6g}"))
    plateau = min(v for j, v in prof.norms.items() if j >= 6) / lp
    out.append(CheckResult("high-scale plateau / ||f||_p", 13, plateau, ">=", cfg.tol("plateau")))
    return out


def suite_envelopes(cfg: CheckConfig):
    out = []
    g = synthesize("gaussian", 1)
    base = GridSpec(1, 7, 3, 5, 1)
    if cfg.quick:
        js, ts = range(0, 3), [2.0 ** e for e in range(-2, 3)]
    else:
        js, ts = range(0, 7), [2.0 ** e for e in range(-4, 5)]
    rows = schrodinger.envelope_sweep_z4(g, 1, 2, js, ts, grid=base)
    out.append(CheckResult("free envelope spread, p=1", 6, schrodinger.spread(rows), "<=", cfg.tol("spread")))
    slope = schrodinger.top_decade_slope(rows)
    out.append(CheckResult("free envelope top-decade slope (relative error to d/2)", 6, abs(slope / 0.5 - 1.0), "<=",
                           cfg.tol("slope"), f"slope {slope:.6g}"))
    rows6 = schrodinger.envelope_sweep_z6(g, 4, 2, js, ts, grid=base)
    out.append(CheckResult("aggregate envelope spread, p=4", 6, schrodinger.spread(rows6), "<=", cfg.tol("spread")))
    slope6 = schrodinger.top_decade_slope(rows6)
    out.append(CheckResult("aggregate envelope top-decade slope (relative error to -1/4)", 6, abs(slope6 / -0.25 - 1.0),
                           "<=", cfg.tol("slope"), f"slope {slope6:.6g}"))
    rows2 = schrodinger.envelope_sweep_z4(g, 2, 2, range(0, 3), ts, grid=base)
    out.append(CheckResult("p=2 ratio bounded (max/min)", 6, schrodinger.spread(rows2), "<=",
                           cfg.tol("bounded")))
    rows0 = schrodinger.envelope_sweep_z4(g, 1, 2, range(0, 3), [0.0], grid=base)
    out.append(CheckResult("t=0 ratios equal 1", 6, max(abs(r.ratio - 1.0) for r in rows0), "<=",
                           cfg.tol("mass")))
    return out


def suite_duality(cfg: CheckConfig):
    out = []
    d = cfg.d
    grid = GridSpec(d, 5, 4) if cfg.quick else cfg.grid
    jr = (-4, 4) if cfg.quick else (cfg.j_min, cfg.j_max)
    p = q = r = 4
    w = weight_w_p(4, d)
    w_dual = power_weight(1, -0.25, 0.75)
    pc, qc, rc = (conjugate_exponent(v) for v in (p, q, r))
    spec = norms.NormSpec(p, q, r, w, *jr)
    dual = norms.NormSpec(pc, qc, rc, w_dual, *jr)
    n = 3 if cfg.quick else cfg.family
    fs = random_family(n, cfg.seed, d)
    gs = random_family(n, cfg.seed + 50, d)
    worst = -math.inf
    for f, g in zip(fs, gs):
        pair = norms.duality_pairing(f, g, w, w_dual, spec, grid=grid)
        bound = norms.frak_norm(f, spec, grid=grid).value * norms.frak_norm(g, dual, grid=grid).value
        worst = max(worst, abs(pair) - bound)
    out.append(CheckResult("Hölder bound for the pairing (max |<f,g>| - bound)", 12, worst, "<=",
                           cfg.tol("holder"),
                           f"dual weight good: {is_good(w_dual, pc, qc, d).good}"))
    zp = abs(norms.duality_pairing(fs[0], zero(d), w, w_dual, spec, grid=grid))
    out.append(CheckResult("pairing with zero", 12, zp, "<=", 0.0))
    neg = 0.0
    for f in fs[:3]:
        v = norms.duality_pairing(f, f, w, w_dual, spec, grid=grid, conjugate=True)
        neg = max(neg, -v.real, abs(v.imag) / max(abs(v), 1e-300))
    out.append(CheckResult("conjugate self-pairing is non-negative", 12, neg, "<=", cfg.tol("homogeneity")))

    tri = -math.inf
    hom = 0.0
    rng = np.random.default_rng(cfg.seed)
    for f, g in list(zip(fs, gs))[: (2 if cfg.quick else 5)]:
        nf = norms.frak_norm(f, spec, grid=grid).value
        ng = norms.frak_norm(g, spec, grid=grid).value
        tri = max(tri, norms.frak_norm(f + g, spec, grid=grid).value - nf - ng)
        c = complex(rng.normal(), rng.normal())
        hom = max(hom, _rel(norms.frak_norm(c * f, spec, grid=grid).value, abs(c) * nf))
    out.append(CheckResult("triangle inequality (max excess)", 13, tri, "<=", cfg.tol("triangle")))
    out.append(CheckResult("absolute homogeneity", 13, hom, "<=", cfg.tol("homogeneity")))
    return out


SUITES: dict = {
    "pou": suite_pou,
    "scaling": suite_scaling,
    "z-chain": suite_zchain,
    "stft-a2": suite_stft,
    "embedding": suite_embedding,
    "sharpness": suite_sharpness,
    "envelopes": suite_envelopes,
    "duality": suite_duality,
}


def run_suite(name: str, cfg: Optional[CheckConfig] = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or CheckConfig()
    return SuiteReport(name, SUITES[name](cfg))
