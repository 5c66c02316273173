"""Random machines, exhaustive word grids and curated instance suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .automaton import OrdinalAutomaton
from .ordinals import OrdinalCNF, parse_cnf
from .words import BLANK, FiniteOrdinalWord


def random_automaton(rng: random.Random, level: int, alphabet=("a", "b"), max_states: int = 4,
                     p_step: float = 0.4, p_limit: float = 0.35, p_final: float = 0.4) -> OrdinalAutomaton:
    """Explicit automaton with 1..max_states states and a random limit table."""
    k = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(k)]
    letters = list(alphabet) + [BLANK]
    steps = {(p, a, q) for p in states for a in letters for q in states if rng.random() < p_step}
    limits = []
    for size in range(1, k + 1):
        for S in itertools.combinations(states, size):
            if rng.random() < p_limit:
                limits.extend((S, q) for q in rng.sample(states, rng.randint(1, min(2, k))))
    finals = {q for q in states if rng.random() < p_final}
    return OrdinalAutomaton.explicit(level, alphabet, states, states[0], steps, finals, limits)


def positions(level: int, box: int):
    return list(itertools.product(range(box + 1), repeat=level))


def word_grid(level: int, alphabet, max_support: int = 3, box: int = 3):
    """Every word with at most max_support letters, all coordinates <= box."""
    letters = sorted(alphabet)
    pos = positions(level, box)
    out = []
    for size in range(max_support + 1):
        for chosen in itertools.combinations(pos, size):
            for word in itertools.product(letters, repeat=size):
                out.append(FiniteOrdinalWord(level, dict(zip(chosen, word))))
    return out


# countability

@dataclass
class CountabilityCase:
    name: str
    automaton: OrdinalAutomaton
    countable: bool


def _det(name, states, delta, finals, limits, alphabet=("a", "b")):
    steps = {(p, a, q) for (p, a), q in delta.items()}
    return OrdinalAutomaton.explicit(1, alphabet, states, states[0], steps, finals, limits)


def countability_suite() -> list:
    cases = []
    cases.append(CountabilityCase(
        "(a+b)^w",
        _det("all", ["q", "acc"], {("q", "a"): "q", ("q", "b"): "q"}, {"acc"}, [({"q"}, "acc")]),
        False))
    cases.append(CountabilityCase(
        "a^w",
        _det("aw", ["q", "acc"], {("q", "a"): "q"}, {"acc"}, [({"q"}, "acc")]),
        True))
    last = {("s", "a"): "qa", ("s", "b"): "qb", ("qa", "a"): "qa", ("qa", "b"): "qb",
            ("qb", "a"): "qa", ("qb", "b"): "qb"}
    cases.append(CountabilityCase(
        "(a+b)*a^w", _det("ev-a", ["s", "qa", "qb", "acc"], last, {"acc"}, [({"qa"}, "acc")]), True))
    cases.append(CountabilityCase(
        "ab(ba)^w",
        _det("uv", ["s0", "s1", "s2", "s3", "acc"],
             {("s0", "a"): "s1", ("s1", "b"): "s2", ("s2", "b"): "s3", ("s3", "a"): "s2"},
             {"acc"}, [({"s2", "s3"}, "acc")]),
        True))
    cases.append(CountabilityCase(
        "b(ab)^w",
        _det("uv2", ["s0", "s1", "s2", "acc"],
             {("s0", "b"): "s1", ("s1", "a"): "s2", ("s2", "b"): "s1"}, {"acc"}, [({"s1", "s2"}, "acc")]),
        True))
    cases.append(CountabilityCase(
        "a^w + b^w",
        _det("two", ["s", "qa", "qb", "acc"],
             {("s", "a"): "qa", ("s", "b"): "qb", ("qa", "a"): "qa", ("qb", "b"): "qb"},
             {"acc"}, [({"qa"}, "acc"), ({"qb"}, "acc")]),
        True))
    cases.append(CountabilityCase(
        "a*b(a+b)^w",
        _det("ab-any", ["s", "t", "acc"],
             {("s", "a"): "s", ("s", "b"): "t", ("t", "a"): "t", ("t", "b"): "t"},
             {"acc"}, [({"t"}, "acc")]),
        False))
    cases.append(CountabilityCase(
        "infinitely many b",
        _det("inf-b", ["s", "qa", "qb", "acc"], last, {"acc"}, [({"qa", "qb"}, "acc"), ({"qb"}, "acc")]),
        False))
    return cases


def lasso_words(alphabet=("a", "b"), max_prefix: int = 3, max_cycle: int = 3):
    """Every (u, v) with |u| <= max_prefix and 1 <= |v| <= max_cycle."""
    us = [u for k in range(max_prefix + 1) for u in itertools.product(alphabet, repeat=k)]
    vs = [v for k in range(1, max_cycle + 1) for v in itertools.product(alphabet, repeat=k)]
    return [(u, v) for u in us for v in vs]


# logic corpus

W = "w^(1)*1"
STRUCTURES = {
    # key: (level, bound, constant c)
    "5": (1, "5", "3"),
    "w": (1, W, "2"),
    "w+2": (1, W + " + 2", W),
    "w*2": (1, "w^(1)*2", W),
    "w^2": (1, "w^(2)*1", "w^(1)*2"),
    "w^w": (2, "w^(1,0)*1", "w^(0,2)*1"),
}

ORDER = ("5", "w", "w+2", "w*2", "w^2", "w^w")


def _all(v):
    return {k: v for k in ORDER}


def _by(**kw):
    table = {"w_2": "w*2", "w2": "w^2", "ww": "w^w", "wp2": "w+2", "five": "5", "w": "w"}
    return {table[k]: v for k, v in kw.items()}


@dataclass
class CorpusEntry:
    sentence: str
    truth: dict  # structure key -> expected truth value
    bound: int = 3
    slack: int = 1


CORPUS = [
    CorpusEntry("A x . A y . (lt(x,y) | eq(x,y) | lt(y,x))", _all(True)),
    CorpusEntry("A x . ~lt(x,x)", _all(True)),
    CorpusEntry("A x . A y . ~(x < y & y < x)", _all(True)),
    CorpusEntry("A x . A y . A z . ((x < y & y < z) -> x < z)", _all(True), bound=2),
    CorpusEntry("E x . A y . ~(y < x)", _all(True)),
    CorpusEntry("~ ~ (E x . A y . ~(y < x))", _all(True)),
    CorpusEntry("E x . A y . (y < x | y = x)",
                _by(five=True, w=False, wp2=True, w_2=False, w2=False, ww=False), bound=4),
    CorpusEntry("A x . E y . (x < y & A z . (x < z -> (z = y | y < z)))",
                _by(five=False, w=True, wp2=False, w_2=True, w2=True, ww=True), bound=4),
    CorpusEntry("E x . (E y . y < x) & (A y . (y < x -> E z . (y < z & z < x)))",
                _by(five=False, w=False, wp2=True, w_2=True, w2=True, ww=True)),
    CorpusEntry("Einf x . x = x", _by(five=False, w=True, wp2=True, w_2=True, w2=True, ww=True), bound=5),
    CorpusEntry("Ealeph0 x . x = x", _by(five=False, w=True, wp2=True, w_2=True, w2=True, ww=True), bound=5),
    CorpusEntry("Einf x . E y . x < y", _by(five=False, w=True, wp2=True, w_2=True, w2=True, ww=True), bound=5),
    CorpusEntry("Einf x . A y . (y < x -> E z . (y < z & z < x))",
                _by(five=False, w=False, wp2=False, w_2=False, w2=True, ww=True), bound=3),
    CorpusEntry("Einf x . E y . (c(y) & x < y)",
                _by(five=False, w=False, wp2=True, w_2=True, w2=True, ww=True), bound=4),
    CorpusEntry("Econt x . x = x", _all(False)),
    CorpusEntry("E x . Econt y . x < y", _all(False)),
    CorpusEntry("~ (Econt x . x = x)", _all(True)),
    CorpusEntry("E x . c(x)", _all(True)),
    CorpusEntry("A x . A y . ((c(x) & c(y)) -> x = y)", _all(True)),
    CorpusEntry("E x . E y . (x < y & c(y) & A z . ~(x < z & z < y))",
                _by(five=True, w=True, wp2=False, w_2=False, w2=False, ww=False), bound=4),
    CorpusEntry("A x . E y . (y < x | y = x)", _all(True)),
    CorpusEntry("~ E x . ~(x = x)", _all(True)),
    CorpusEntry("E x . E y . E z . (x < y & y < z)", _all(True), bound=2),
    CorpusEntry("A x . (E y . (x < y)) -> (E y . (x < y & ~(E z . (x < z & z < y))))",
                _all(True)),
    CorpusEntry("E x . (E y . x < y) & ~(E y . (x < y & ~(E z . (x < z & z < y))))", _all(False)),
    CorpusEntry("Einf x . x < x", _all(False)),
    CorpusEntry("Ealeph0 x . (E y . (c(y) & x < y))",
                _by(five=False, w=False, wp2=True, w_2=True, w2=True, ww=True), bound=4),
    CorpusEntry("E x . (c(x) & Einf y . y < x)",
                _by(five=False, w=False, wp2=True, w_2=True, w2=True, ww=True), bound=4),
    CorpusEntry("A x . (c(x) -> E y . (y < x & A z . (z < x -> (z < y | z = y))))",
                _by(five=True, w=True, wp2=False, w_2=False, w2=False, ww=False), bound=3),
    CorpusEntry("E x . E y . (~(x = y) & A z . (z < x | z = x | z < y | z = y))",
                _by(five=True, w=False, wp2=True, w_2=False, w2=False, ww=False), bound=4),
    CorpusEntry("true -> E x . x = x", _all(True)),
    CorpusEntry("false | A x . (x = x -> ~(x < x))", _all(True)),
]


def structure_bound(key) -> tuple:
    level, bound, const = STRUCTURES[key]
    return level, parse_cnf(bound, level), parse_cnf(const, level)


def corpus_truth(entry: CorpusEntry, key: str) -> bool:
    return entry.truth[key]


def grid_ordinals(level, max_terms=3, max_coord=3, max_coef=3):
    from .presentations import bounded_grid

    return bounded_grid(level, max_terms, max_coord, max_coef)


def ordinal_rank_oracle(values) -> dict:
    """Rank of each CNF under an independently written comparison.

    Terms are compared as (exponent vector, coefficient) with the exponent
    read as a base-(max+1) number; sorting by the resulting key gives ranks.
    """
    def key(x: OrdinalCNF):
        out = []
        for e, c in x.terms:
            out.append((1,) + tuple(e) + (c,))
        out.append((0,))
        return out

    ordered = sorted(set(values), key=key)
    return {x: i for i, x in enumerate(ordered)}
