"""Run every check suite at the default (or a given) configuration and write
one JSON report per suite.

    python scripts/run_checks.py --out results/checks [--config cfg.json]
"""
import argparse
import time
from pathlib import Path

from modscale import checks


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results/checks")
    ap.add_argument("--config", default=None)
    args = ap.parse_args()
    cfg = checks.CheckConfig.load(args.config) if args.config else checks.CheckConfig()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name in checks.SUITES:
        t0 = time.perf_counter()
        rep = checks.run_suite(name, cfg)
        (out / f"{name}.json").write_text(rep.to_json() + "\n")
        print(rep.text())
        print(f"  ({time.perf_counter() - t0:.1f} s)")
        ok &= rep.passed
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
