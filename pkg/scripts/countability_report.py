#!/usr/bin/env python3
"""Countability verdicts, decompositions and witnesses for the curated suite."""

from ordauto.countable import check_witness, countability_level1, decomposition_accepts, omega_accepts
from ordauto.generators import countability_suite, lasso_words


def word(xs):
    return "".join(xs) or "ε"


def main():
    lassos = lasso_words()
    for case in countability_suite():
        res = countability_level1(case.automaton)
        status = "ok" if res.countable == case.countable else "WRONG"
        print(f"{case.name:<20} {res.verdict:<12} {status}")
        if res.countable:
            agree = sum(decomposition_accepts(res.decomposition, u, v) == omega_accepts(case.automaton, u, v)
                        for u, v in lassos)
            for U, v in res.decomposition:
                print(f"    piece: prefixes into a {len(U.states)}-state NFA, cycle {word(v)}")
            print(f"    decomposition agrees on {agree}/{len(lassos)} lasso words")
        else:
            w = res.witness
            print(f"    witness: prefix {word(w.prefix)}, cycles {', '.join(map(word, w.cycles))}, "
                  f"valid={check_witness(case.automaton, w)}")


if __name__ == "__main__":
    main()
