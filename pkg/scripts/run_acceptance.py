#!/usr/bin/env python3
"""Run the acceptance grid and print one line per criterion."""

import argparse
import json
import sys
from dataclasses import asdict

from ordauto.acceptance import AcceptanceConfig, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="smaller grids")
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--json", help="write results here")
    args = ap.parse_args()

    cfg = AcceptanceConfig.quick() if args.quick else AcceptanceConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    results = run_all(cfg, only=set(args.only) if args.only else None)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg),
                       "results": [{"number": r.number, "title": r.title, "passed": r.passed,
                                    "checks": r.checked, "failures": len(r.failures),
                                    "seconds": r.seconds} for r in results]}, fh, indent=2)
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
