"""Run the acceptance sweep and write a JSON report.

    python3 scripts/run_sweep.py --out sweep.json --threads 4
    python3 scripts/run_sweep.py --quick --only domination --only cone-chain
"""

import argparse
import json
import sys
import time

from satake_fans.verify import CHECKS, SweepConfig, run_checks

QUICK = dict(root_systems=("A1", "A2", "B2", "G2"), coverage_points=100, sequences=20,
             window_cases=100, monomial_elements=20, domination_cases=20, interior_samples=10,
             directions_per_stratum=1)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-")
    ap.add_argument("--only", action="append", choices=list(CHECKS))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--quick", action="store_true", help="small sweep for smoke runs")
    args = ap.parse_args(argv)

    cfg = SweepConfig(seed=args.seed, threads=args.threads, **(QUICK if args.quick else {}))
    t0 = time.perf_counter()
    results = run_checks(cfg, only=args.only)
    report = {
        "config": {k: v for k, v in cfg.__dict__.items() if k != "threads"},
        "passed": all(r.passed for r in results),
        "checks": [r.to_json(timings=True) for r in results],
        "seconds": round(time.perf_counter() - t0, 2),
    }
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.1f}s)", file=sys.stderr)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
