#!/usr/bin/env python3
"""Truth table of the sentence corpus: engine, oracle and hand value per structure."""

import argparse
import time

from ordauto.acceptance import corpus_structures
from ordauto.generators import CORPUS, ORDER
from ordauto.logic import evaluate_sentence, oracle_evaluate, parse_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--structures", nargs="+", default=list(ORDER))
    ap.add_argument("--limit", type=int, help="first N sentences only")
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()

    structures = corpus_structures(args.structures)
    entries = CORPUS[: args.limit] if args.limit else CORPUS
    print("  ".join(f"{k:>5}" for k in args.structures) + "  sentence")
    bad = 0
    for entry in entries:
        phi = parse_formula(entry.sentence)
        cells = []
        for key in args.structures:
            t = time.perf_counter()
            got = evaluate_sentence(structures[key], phi)
            ok = got == entry.truth[key]
            if not args.no_oracle:
                ok &= oracle_evaluate(structures[key], phi, entry.bound, entry.slack) == got
            bad += not ok
            cells.append(f"{'T' if got else 'F'}{'' if ok else '!'}{time.perf_counter() - t:>4.1f}")
        print("  ".join(f"{c:>5}" for c in cells) + "  " + entry.sentence)
    print(f"{bad} disagreements")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
