"""Command line front end: ``modscale {gen,norm,check,sweep,probe}``.

Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from modscale import amalgam, checks, io, norms, schrodinger, stft
from modscale.spectral import (Box, GridSpec, SpectralFunction, sample_frequency, synthesize)
from modscale.weights import conjugate_exponent, fx_weight, parse_weight

SPACES = ("mod", "frak", "famalgam", "frak-famalgam", "fx", "wiener", "stft")
GRID_KEYS = ("d", "a", "b")


class UsageError(Exception):
    pass


def _number(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if "," in text:
        return tuple(_number(t) for t in text.split(","))
    return text


def parse_params(items):
    """``key=value`` strings to a dict; ``lo,hi`` becomes a tuple."""
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key] = _number(value)
    return out


def _finite(name):
    def check(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number") from None
        if not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"{name} must be finite (got {text})")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be >= 1")
        return v
    return check


def snapshot_function(snap: io.Snapshot) -> tuple[SpectralFunction, GridSpec]:
    """Linear interpolant of snapshot frequency samples, zero outside the lattice box."""
    from scipy.interpolate import RegularGridInterpolator

    if snap.product:
        raise UsageError("STFT product-lattice snapshots cannot be used as norm input")
    grid = GridSpec(snap.d, snap.a, snap.b)
    axis = grid.freq_axis()
    interp = RegularGridInterpolator((axis,) * snap.d, snap.values, bounds_error=False, fill_value=0.0)

    def rule(xi):
        return interp(xi.reshape(-1, snap.d)).reshape(xi.shape[:-1])

    box = Box.cube(axis[0], axis[-1], snap.d)
    return SpectralFunction(rule, snap.d, support=box, name="snapshot"), grid


def _load_input(args):
    params = parse_params(args.params)
    grid_kw = {k: params.pop(k) for k in GRID_KEYS if k in params}
    path = Path(args.input)
    if path.is_file():
        if grid_kw or params:
            raise UsageError("grid and function parameters are fixed by the snapshot")
        try:
            snap = io.read_snapshot(path)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        f, grid = snapshot_function(snap)
    else:
        d = int(grid_kw.get("d", args.d))
        grid = GridSpec(d, int(grid_kw.get("a", args.a)), int(grid_kw.get("b", args.b)))
        f = synthesize(args.input, d, **params)
    if args.cell_exponent is not None:
        from dataclasses import replace
        grid = replace(grid, cell_exponent=args.cell_exponent)
    return f, grid


def _single(value, j):
    return {"value": float(value), "per_j": [[int(j), float(value)]], "boundary_flag": False}


def cmd_gen(args) -> int:
    params = parse_params(args.params)
    grid_kw = {k: int(params.pop(k)) for k in GRID_KEYS if k in params}
    grid = GridSpec(grid_kw.get("d", args.d), grid_kw.get("a", args.a), grid_kw.get("b", args.b))
    f = synthesize(args.kind, grid.d, **params)
    if args.stft:
        io.write_stft_snapshot(args.out, stft.stft(f, grid))
    else:
        io.write_snapshot(args.out, sample_frequency(f, grid), grid)
    print(json.dumps({"path": str(args.out), "d": grid.d, "a": grid.a, "b": grid.b, "N": grid.N}))
    return 0


def cmd_norm(args) -> int:
    f, grid = _load_input(args)
    p, q = args.p, args.q
    r = args.r if args.r is not None else q
    jr = (args.j_min, args.j_max)
    weight = parse_weight(args.weight, f.dim) if args.weight else None
    space = args.space
    if space in ("frak", "frak-famalgam") and weight is None:
        raise UsageError(f"--weight is required for space {space}")
    if space == "mod":
        out = _single(norms.mod_norm(f, p, q, args.j, grid=grid), args.j)
    elif space == "famalgam":
        out = _single(amalgam.famalgam_norm(f, p, q, args.j, grid=grid), args.j)
    elif space == "frak":
        rep = norms.frak_norm(f, norms.NormSpec(p, q, r, weight, *jr), grid=grid, per_cell=bool(args.cells))
        out = rep.to_dict()
    elif space == "frak-famalgam":
        rep = amalgam.frak_famalgam_norm(f, p, q, r, weight, jr, grid=grid, per_cell=bool(args.cells))
        out = rep.to_dict()
    elif space == "fx":
        value = amalgam.fx_norm(f, p, q, jr, grid=grid)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = amalgam.frak_famalgam_norm(f, conjugate_exponent(p), q, q, fx_weight(p, f.dim), jr, grid=grid)
        out = dict(rep.to_dict(), value=value)
    elif space == "wiener":
        out = _single(amalgam.wiener_amalgam_norm(f, p, q, grid=grid), 0)
    else:
        if weight is None:
            out = _single(stft.stft_mod_norm(f, p, q, args.j, grid), args.j)
        else:
            out = stft.stft_frak_norm(f, p, q, r, weight, jr, grid).to_dict()
    if args.cells:
        if space not in ("frak", "frak-famalgam"):
            raise UsageError("--cells is available for frak and frak-famalgam")
        Path(args.cells).write_text(rep.cells_csv())
    print(json.dumps(out))
    return 0


def _load_config(args) -> checks.CheckConfig:
    cfg = checks.CheckConfig.load(args.config) if args.config else checks.CheckConfig()
    if args.quick:
        cfg.quick = True
    return cfg


def cmd_check(args) -> int:
    cfg = _load_config(args)
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    reports = [checks.run_suite(n, cfg) for n in names]
    for rep in reports:
        print(rep.text())
    if args.json:
        payload = [rep.to_dict() for rep in reports]
        Path(args.json).write_text(json.dumps(payload if len(payload) > 1 else payload[0], indent=1) + "\n")
    return 0 if all(rep.passed for rep in reports) else 1


def cmd_sweep(args) -> int:
    f = synthesize(args.kind, 1)
    grid = GridSpec(1, args.a, args.b, args.cell_exponent, args.oversample)
    js = range(args.j_min, args.j_max + 1)
    ts = [2.0 ** e for e in range(args.t_min_exp, args.t_max_exp + 1)]
    sweep = schrodinger.envelope_sweep_z4 if args.envelope == "z4" else schrodinger.envelope_sweep_z6
    rows = sweep(f, args.p, args.q, js, ts, grid=grid)
    text = schrodinger.sweep_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    summary = {"spread": schrodinger.spread(rows)}
    try:
        summary["top_decade_slope"] = schrodinger.top_decade_slope(rows)
    except ValueError:
        summary["top_decade_slope"] = None
    print(json.dumps(summary), file=sys.stderr)
    return 0


def cmd_probe(args) -> int:
    fams = [synthesize("gaussian", 1)] + checks.random_family(args.count - 1, args.seed)
    grid = GridSpec(1, args.a, args.b)
    rows = schrodinger.strichartz_probe(fams, args.p, 6.0, args.T, args.steps, (args.j_min, args.j_max),
                                        grid=grid)
    lines = ["name,spacetime,fx,frak,over_fx,over_frak"]
    lines += [f"{r.name},{r.spacetime!r},{r.fx!r},{r.frak!r},{r.over_fx!r},{r.over_frak!r}" for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    over = np.array([r.over_frak for r in rows])
    print(json.dumps({"exploratory": True, "over_frak_min": float(over.min()),
                      "over_frak_max": float(over.max())}), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modscale", description="Scale-invariant modulation norms.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="sample a test function to a snapshot file")
    g.add_argument("kind")
    g.add_argument("params", nargs="*", help="key=value (d, a, b and function parameters)")
    g.add_argument("-o", "--out", required=True)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--a", type=int, default=6)
    g.add_argument("--b", type=int, default=6)
    g.add_argument("--stft", action="store_true", help="write the product-lattice STFT instead")
    g.set_defaults(func=cmd_gen)

    n = sub.add_parser("norm", help="compute a norm and print NormReport JSON")
    n.add_argument("input", help="snapshot path or built-in kind")
    n.add_argument("params", nargs="*", help="key=value for built-in kinds")
    n.add_argument("--space", choices=SPACES, default="mod")
    n.add_argument("--p", type=_finite("p"), default=2.0)
    n.add_argument("--q", type=_finite("q"), default=2.0)
    n.add_argument("--r", type=_finite("r"), default=None)
    n.add_argument("--weight", default=None, help="shorthand, JSON object or JSON file")
    n.add_argument("--j", type=int, default=0)
    n.add_argument("--j-min", type=int, default=-12)
    n.add_argument("--j-max", type=int, default=8)
    n.add_argument("--d", type=int, default=1)
    n.add_argument("--a", type=int, default=6)
    n.add_argument("--b", type=int, default=6)
    n.add_argument("--cell-exponent", type=int, default=None)
    n.add_argument("--cells", default=None, help="write per-cell CSV here")
    n.set_defaults(func=cmd_norm)

    c = sub.add_parser("check", help="run a named check suite")
    c.add_argument("suite", choices=list(checks.SUITES) + ["all"])
    c.add_argument("--config", default=None)
    c.add_argument("--quick", action="store_true")
    c.add_argument("--json", default=None, help="write the report JSON here")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", help="envelope sweep CSV")
    s.add_argument("envelope", choices=("z4", "z6"))
    s.add_argument("--kind", default="gaussian")
    s.add_argument("--p", type=_finite("p"), default=1.0)
    s.add_argument("--q", type=_finite("q"), default=2.0)
    s.add_argument("--j-min", type=int, default=0)
    s.add_argument("--j-max", type=int, default=6)
    s.add_argument("--t-min-exp", type=int, default=-4)
    s.add_argument("--t-max-exp", type=int, default=4)
    s.add_argument("--a", type=int, default=7)
    s.add_argument("--b", type=int, default=3)
    s.add_argument("--cell-exponent", type=int, default=5)
    s.add_argument("--oversample", type=int, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("probe", help="exploratory space-time probe (no acceptance claim)")
    pr.add_argument("--p", type=float, default=2.5)
    pr.add_argument("--count", type=int, default=5)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--T", type=float, default=1.0)
    pr.add_argument("--steps", type=int, default=64)
    pr.add_argument("--j-min", type=int, default=-8)
    pr.add_argument("--j-max", type=int, default=4)
    pr.add_argument("--a", type=int, default=6)
    pr.add_argument("--b", type=int, default=6)
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=cmd_probe)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, OSError) as exc:
        print(f"modscale: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
