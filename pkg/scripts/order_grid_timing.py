#!/usr/bin/env python3
"""Time the order automaton on the CNF grid, level by level.

Prints grid size, number of pairs checked, mismatches against cnf_compare
and pairs per second.  Pairs are sampled above --full-up-to.
"""

import argparse
import random
import time

from ordauto.acceptance import order_verdict
from ordauto.ordinals import cnf_compare
from ordauto.presentations import bounded_grid, order_automaton, width_of


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--terms", type=int, default=3)
    ap.add_argument("--coord", type=int, default=3)
    ap.add_argument("--coef", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=5000, help="sampled pairs per sampled level")
    ap.add_argument("--full-up-to", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'n':>2} {'grid':>9} {'pairs':>9} {'bad':>4} {'pairs/s':>9}")
    for n in args.levels:
        grid = bounded_grid(n, args.terms, args.coord, args.coef)
        cmp = order_automaton(n, max(width_of(x) for x in grid))
        if n <= args.full_up_to:
            pairs = [(x, y) for x in grid for y in grid]
        else:
            pairs = [(rng.choice(grid), rng.choice(grid)) for _ in range(args.pairs)]
        t = time.perf_counter()
        bad = sum(order_verdict(cmp, x, y, n) is not cnf_compare(x, y) for x, y in pairs)
        dt = time.perf_counter() - t
        print(f"{n:>2} {len(grid):>9} {len(pairs):>9} {bad:>4} {len(pairs) / dt:>9.0f}")


if __name__ == "__main__":
    main()
