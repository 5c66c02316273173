"""The acceptance grid: one runner per criterion, each returning a result record.

Used by ``ordauto selftest``, ``scripts/run_acceptance.py`` and the pytest
acceptance module.  ``AcceptanceConfig.quick()`` shrinks every grid for
smoke runs; the default configuration is the full grid.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import events as ev
from .automaton import (
    BLANK,
    OrdinalAutomaton,
    check_disjoint_substitution,
    intersection,
    run_accepts,
    substitute,
)
from .countable import (
    check_witness,
    countability_level1,
    decomposition_accepts,
    omega_accepts,
)
from .formats import (
    PresentationSpec,
    read_automaton,
    read_cnf,
    read_eventnfa,
    read_presentation,
    read_word,
    write_automaton,
    write_cnf,
    write_eventnfa,
    write_presentation,
    write_word,
)
from .generators import (
    CORPUS,
    ORDER,
    countability_suite,
    grid_ordinals,
    lasso_words,
    random_automaton,
    structure_bound,
    word_grid,
)
from .logic import evaluate_sentence, oracle_evaluate, ordinal_constant, ordinal_structure
from .oracle import NaiveRunner
from .ordinals import Order, cnf_compare, format_cnf, parse_cnf
from .presentations import decode_word, encode_ordinal, order_automaton
from .words import FiniteOrdinalWord, convolve, empty_word


@dataclass
class AcceptanceConfig:
    seed: int = 20240917
    # criterion 1
    order_levels: tuple = (1, 2, 3)
    order_full_levels: tuple = (1,)  # all pairs; other levels: every/sampled element vs neighbours
    order_partners: int = 3
    order_sample: dict = field(default_factory=lambda: {3: 15000})
    # criteria 2 and 3
    machines: int = 500
    machine_levels: tuple = (1, 2)
    box: int = 3
    max_support: int = 3
    # criterion 4
    bool_pairs: int = 100
    bool_word_len: int = 6
    # criterion 5
    subst_instances: int = 50
    # criterion 6
    lasso_prefix: int = 3
    lasso_cycle: int = 3
    # criterion 7
    structures: tuple = ORDER
    corpus_limit: int | None = None
    # criterion 8
    roundtrip_levels: tuple = (1, 2, 3)
    roundtrip_sample: dict = field(default_factory=dict)  # level -> sample size (None: full)
    format_instances: int = 40

    @classmethod
    def quick(cls) -> "AcceptanceConfig":
        return cls(
            order_full_levels=(1,), order_partners=1, order_sample={2: 1500, 3: 1500},
            machines=24, box=2, bool_pairs=12, bool_word_len=5, subst_instances=8,
            structures=("5", "w+2", "w^w"), corpus_limit=14,
            roundtrip_sample={2: 3000, 3: 3000}, format_instances=10,
        )


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int
    failures: list
    seconds: float
    note: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"; {self.note}" if self.note else ""
        return (f"[{tag}] criterion {self.number} {self.title}: {self.checked} checks, "
                f"{len(self.failures)} failures{extra} ({self.seconds:.1f}s)")


def _timed(number, title):
    def wrap(fn):
        def run(cfg: AcceptanceConfig) -> CriterionResult:
            t = time.perf_counter()
            checked, failures, note = fn(cfg)
            return CriterionResult(number, title, not failures and checked > 0, checked,
                                   failures[:20], time.perf_counter() - t, note)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


# 1

def order_verdict(cmp: OrdinalAutomaton, x, y, n) -> Order:
    ex, ey = encode_ordinal(x, n), encode_ordinal(y, n)
    if run_accepts(cmp, convolve(ex, ey)):
        return Order.LT
    if run_accepts(cmp, convolve(ey, ex)):
        return Order.GT
    return Order.EQ


def order_pairs(n, grid, cfg, rng):
    if n in cfg.order_full_levels:
        return list(itertools.product(grid, repeat=2))
    ordered = sorted(grid, key=_cnf_key)
    idx = range(len(ordered))
    size = cfg.order_sample.get(n)
    if size is not None and size < len(ordered):
        idx = sorted(rng.sample(range(len(ordered)), size))
    pairs = []
    for i in idx:
        x = ordered[i]
        pairs.append((x, x))
        for j in (i - 1, i + 1):
            if 0 <= j < len(ordered):
                pairs.append((x, ordered[j]))
        for _ in range(cfg.order_partners):
            pairs.append((x, ordered[rng.randrange(len(ordered))]))
    return pairs


def _cnf_key(x):
    return [(1,) + tuple(e) + (c,) for e, c in x.terms] + [(0,)]


@_timed(1, "order presentation vs cnf_compare")
def criterion_1(cfg):
    rng = random.Random(cfg.seed + 1)
    checked, failures, notes = 0, [], []
    for n in cfg.order_levels:
        grid = grid_ordinals(n)
        width = max(x.leading_exponent[0] for x in grid if x.terms) + 1
        cmp = order_automaton(n, width)
        pairs = order_pairs(n, grid, cfg, rng)
        for x, y in pairs:
            got, want = order_verdict(cmp, x, y, n), cnf_compare(x, y)
            checked += 1
            if got is not want:
                failures.append(f"n={n} {format_cnf(x)} vs {format_cnf(y)}: {got.name} != {want.name}")
        notes.append(f"n={n}: {len(pairs)} pairs over {len(grid)} ordinals")
    return checked, failures, "; ".join(notes)


# 2, 3

def machines(cfg):
    rng = random.Random(cfg.seed + 2)
    out = []
    for i in range(cfg.machines):
        level = cfg.machine_levels[i % len(cfg.machine_levels)]
        out.append(random_automaton(rng, level))
    return out


_GRIDS = {}


def _grid(level, cfg):
    key = (level, cfg.max_support, cfg.box)
    if key not in _GRIDS:
        _GRIDS[key] = word_grid(level, ("a", "b"), cfg.max_support, cfg.box)
    return _GRIDS[key]


_RUNS = {}


def _machine_runs(cfg):
    """(machine, word, run_accepts verdict) for the whole grid, shared by 2 and 3."""
    key = (cfg.seed, cfg.machines, cfg.machine_levels, cfg.max_support, cfg.box)
    if key not in _RUNS:
        _RUNS.clear()
        _RUNS[key] = [(A, [(w, run_accepts(A, w)) for w in _grid(A.level, cfg)])
                      for A in machines(cfg)]
    return _RUNS[key]


@_timed(2, "run semantics vs naive oracle")
def criterion_2(cfg):
    checked, failures, accepted = 0, [], 0
    for i, (A, runs) in enumerate(_machine_runs(cfg)):
        naive = NaiveRunner(A)
        for w, verdict in runs:
            checked += 1
            accepted += verdict
            if verdict != naive.accepts(w):
                failures.append(f"machine {i} (n={A.level}) word {w}")
    return checked, failures, f"{cfg.machines} machines, {accepted} accepting runs"


@_timed(3, "compiled event NFA vs run_accepts")
def criterion_3(cfg):
    checked, failures = 0, []
    for i, (A, runs) in enumerate(_machine_runs(cfg)):
        E = ev.compile_automaton(A)
        for w, verdict in runs:
            checked += 1
            if E.accepts(ev.encode_word(w)) != verdict:
                failures.append(f"machine {i} (n={A.level}) word {w}")
    return checked, failures, f"{cfg.machines} machines"


# 4

@_timed(4, "boolean closure laws")
def criterion_4(cfg):
    rng = random.Random(cfg.seed + 4)
    checked, failures = 0, []
    words = {n: ev.canonical_words(n, {"a", "b"}, cfg.bool_word_len) for n in (1, 2)}
    for i in range(cfg.bool_pairs):
        n = 1 + i % 2
        A, B = random_automaton(rng, n), random_automaton(rng, n)
        E1, E2 = ev.compile_automaton(A), ev.compile_automaton(B)
        C1, C2 = ev.complement(E1), ev.complement(E2)
        laws = {
            "involution": (ev.complement(C1), lambda a, b: a),
            "complement": (C1, lambda a, b: not a),
            "and": (ev.intersect(E1, E2), lambda a, b: a and b),
            "or": (ev.union(E1, E2), lambda a, b: a or b),
            "demorgan-and": (ev.union(C1, C2), lambda a, b: not (a and b)),
            "demorgan-or": (ev.intersect(C1, C2), lambda a, b: not (a or b)),
            "not-and": (ev.complement(ev.intersect(E1, E2)), lambda a, b: not (a and b)),
            "not-or": (ev.complement(ev.union(E1, E2)), lambda a, b: not (a or b)),
        }
        for w in words[n]:
            a, b = E1.accepts(w), E2.accepts(w)
            for name, (E, law) in laws.items():
                checked += 1
                if E.accepts(w) != law(a, b):
                    failures.append(f"pair {i} law {name} word {' '.join(map(str, w))}")
    return checked, failures, f"{cfg.bool_pairs} pairs, canonical words of length <= {cfg.bool_word_len}"


# 5

def _nonempty(A):
    return not ev.nfa_is_empty(ev.compile_automaton(A))


def _random_subs(rng, disjoint=None):
    while True:
        keys = ["a", "b"] + ([BLANK] if rng.random() < 0.5 else [])
        subs = {}
        for k in keys:
            A = random_automaton(rng, 1, ("x",), max_states=3, p_step=0.45, p_limit=0.5)
            while not _nonempty(A):
                A = random_automaton(rng, 1, ("x",), max_states=3, p_step=0.45, p_limit=0.5)
            subs[k] = A
        if disjoint is None or check_disjoint_substitution(subs) == disjoint:
            return subs


def substitution_instance(rng, probe=(), disjoint=None, tries=40):
    """Random (R, subs) whose languages are non-trivial.

    Every substituted language is non-empty and the result accepts some but
    not all of the `probe` words, so membership checks are never vacuous.
    `disjoint` steers the sample towards (non-)overlapping substitutions;
    the acceptance check re-derives overlap independently.
    """
    while True:
        subs = _random_subs(rng, disjoint)
        for _ in range(tries):
            R = random_automaton(rng, 1, ("a", "b"), max_states=3, p_limit=0.5)
            if not probe:
                return R, subs
            S = substitute(R, subs)
            hits = sum(run_accepts(S, w) for w in probe)
            if 0 < hits < len(probe):
                return R, subs


def block_oracle(R, subs):
    """Membership in the substituted language, block by block, via the naive engine."""
    keys = sorted(subs, key=str)
    sub_runners = {k: NaiveRunner(A) for k, A in subs.items()}
    empty = frozenset(k for k in keys if sub_runners[k].accepts(empty_word(1)))
    letters = [frozenset(c) for r in range(len(keys) + 1) for c in itertools.combinations(keys, r)]
    letters = [L for L in letters if L != empty]
    steps = set()
    for p, a, q in R.steps:
        for L in letters:
            if a in L:
                steps.add((p, L, q))
        if a in empty:
            steps.add((p, BLANK, q))
    outer = OrdinalAutomaton.explicit(1, letters, R.states, R.initial, steps, R.finals, R.limits.pairs())
    outer_runner = NaiveRunner(outer)

    def accepts(w: FiniteOrdinalWord) -> bool:
        blocks = {}
        for pos, a in w.support.items():
            blocks.setdefault(pos[0], {})[pos[1:]] = a
        support = {}
        for i, content in blocks.items():
            block = FiniteOrdinalWord(w.level - 1, content)
            L = frozenset(k for k in keys if sub_runners[k].accepts(block))
            if L != empty:
                support[(i,)] = L
        return outer_runner.accepts(FiniteOrdinalWord(1, support))

    return accepts


def overlap_truth(subs, grid):
    """(overlapping?, evidence) checked independently of the pre-check."""
    keys = sorted(subs, key=str)
    for a, b in itertools.combinations(keys, 2):
        E = ev.intersect(ev.compile_automaton(intersection(subs[a], subs[b])),
                         ev.canonical_domain(1, {"x"}))
        wit = ev.shortest_accepted(E)
        if wit is not None:
            w = ev.decode_digits(wit, 1)
            if NaiveRunner(subs[a]).accepts(w) and NaiveRunner(subs[b]).accepts(w):
                return True, f"{a}/{b} share {w}"
            return None, f"{a}/{b}: witness {w} not confirmed"
    runners = {k: NaiveRunner(subs[k]) for k in keys}
    for w in grid:
        hits = [k for k in keys if runners[k].accepts(w)]
        if len(hits) > 1:
            return None, f"grid word {w} in {hits} but no automaton witness"
    return False, ""


@_timed(5, "substitution vs block-wise membership")
def criterion_5(cfg):
    rng = random.Random(cfg.seed + 5)
    checked, failures = 0, []
    words = word_grid(2, ("x",), cfg.max_support, cfg.box)
    small = word_grid(1, ("x",), cfg.max_support, cfg.box)
    overlapping = 0
    probe = rng.sample(words, min(60, len(words)))
    for i in range(cfg.subst_instances):
        R, subs = substitution_instance(rng, probe, disjoint=(i % 2 == 0))
        S = substitute(R, subs)
        oracle = block_oracle(R, subs)
        for w in words:
            checked += 1
            if run_accepts(S, w) != oracle(w):
                failures.append(f"instance {i} word {w}")
        flagged = not check_disjoint_substitution(subs)
        truth, why = overlap_truth(subs, small)
        overlapping += bool(truth)
        checked += 1
        if truth is None or flagged != truth:
            failures.append(f"instance {i}: pre-check says overlap={flagged}, independent check {truth} {why}")
    return checked, failures, f"{overlapping}/{cfg.subst_instances} instances overlap"


# 6

@_timed(6, "countability of level-1 languages")
def criterion_6(cfg):
    checked, failures = 0, []
    words = lasso_words(("a", "b"), cfg.lasso_prefix, cfg.lasso_cycle)
    for case in countability_suite():
        res = countability_level1(case.automaton)
        checked += 1
        if res.countable != case.countable:
            failures.append(f"{case.name}: got {res.verdict}")
            continue
        if not res.countable:
            checked += 1
            if not check_witness(case.automaton, res.witness):
                failures.append(f"{case.name}: invalid witness {res.witness}")
            continue
        for u, v in words:
            checked += 1
            if omega_accepts(case.automaton, u, v) != decomposition_accepts(res.decomposition, u, v):
                failures.append(f"{case.name}: {''.join(u)}({''.join(v)})^w")
    return checked, failures, f"{len(words)} ultimately periodic words per countable case"


# 7

def corpus_structures(keys):
    out = {}
    for key in keys:
        level, bound, const = structure_bound(key)
        S = ordinal_structure(level, bound)
        ordinal_constant(S, "c", const)
        out[key] = S
    return out


@_timed(7, "logic engine vs oracle and hand truth")
def criterion_7(cfg):
    checked, failures = 0, []
    corpus = CORPUS if cfg.corpus_limit is None else CORPUS[: cfg.corpus_limit]
    for key, S in corpus_structures(cfg.structures).items():
        for entry in corpus:
            truth = entry.truth[key]
            auto = evaluate_sentence(S, entry.sentence)
            brute = oracle_evaluate(S, entry.sentence, entry.bound, entry.slack)
            checked += 1
            if not auto == brute == truth:
                failures.append(f"[{key}] {entry.sentence}: engine {auto}, oracle {brute}, expected {truth}")
    return checked, failures, f"{len(corpus)} sentences x {len(cfg.structures)} structures"


# 8

@_timed(8, "round trips and file formats")
def criterion_8(cfg):
    rng = random.Random(cfg.seed + 8)
    checked, failures = 0, []
    for n in cfg.roundtrip_levels:
        grid = grid_ordinals(n)
        size = cfg.roundtrip_sample.get(n)
        if size is not None and size < len(grid):
            grid = rng.sample(grid, size)
        for x in grid:
            checked += 1
            if decode_word(encode_ordinal(x, n), n) != x:
                failures.append(f"encode/decode n={n} {format_cnf(x)}")
            if x.terms and len(x.terms) < 3 and rng.random() < 0.05:
                checked += 1
                t = write_cnf(x)
                if write_cnf(read_cnf(t)) != t or read_cnf(t) != x or parse_cnf(format_cnf(x), n) != x:
                    failures.append(f"cnf format {format_cnf(x)}")

    def same(kind, text, read, write):
        nonlocal checked
        checked += 1
        if write(read(text)) != text:
            failures.append(f"{kind} format not stable")

    for i in range(cfg.format_instances):
        n = 1 + i % 2
        A = random_automaton(rng, n)
        same("automaton", write_automaton(A), read_automaton, write_automaton)
        B = read_automaton(write_automaton(A))
        for w in rng.sample(_grid(n, cfg), 20):
            checked += 1
            if run_accepts(A, w) != run_accepts(B, w):
                failures.append(f"automaton {i}: re-read automaton differs on {w}")
        E = ev.compile_automaton(A)
        same("eventnfa", write_eventnfa(E), read_eventnfa, write_eventnfa)
        w = rng.choice(_grid(n, cfg))
        same("word", write_word(w, {"a", "b"}), read_word, lambda v: write_word(v, {"a", "b"}))
        checked += 1
        if read_word(write_word(w)) != w:
            failures.append(f"word {w} changed on re-read")
    for key in ORDER:
        level, bound, const = structure_bound(key)
        P = PresentationSpec(level, bound, {"c": const})
        same("presentation", write_presentation(P), read_presentation, write_presentation)
    return checked, failures, ""


CRITERIA: dict[int, Callable] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_all(cfg: AcceptanceConfig | None = None, only=None, report=print) -> list:
    cfg = cfg or AcceptanceConfig()
    results = []
    for k, fn in CRITERIA.items():
        if only and k not in only:
            continue
        res = fn(cfg)
        results.append(res)
        if report:
            report(res.line())
            for f in res.failures[:5]:
                report(f"    {f}")
    return results
