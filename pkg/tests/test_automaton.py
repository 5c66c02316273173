import random

import pytest
from hypothesis import given, settings, strategies as st

from ordauto.automaton import (
    AutomatonError,
    OrdinalAutomaton,
    build_summaries,
    check_disjoint_substitution,
    compose,
    emptiness_finite_support,
    empty_language,
    gap_summary,
    intersection,
    relabel,
    run_accepts,
    single_word,
    substitute,
    union,
    universal,
)
from ordauto.generators import random_automaton, word_grid
from ordauto.oracle import naive_accepts
from ordauto.ordinals import parse_cnf
from ordauto.words import BLANK, FiniteOrdinalWord, empty_word

from strategies import words


def loop_machine():
    return OrdinalAutomaton.explicit(1, "a", ["q0", "qf"], "q0", {("q0", BLANK, "q0")},
                                     {"qf"}, [({"q0"}, "qf")])


def only_first_a():
    """Level 1, accepts exactly the word with support {0 -> a}."""
    steps = {("s", "a", "t"), ("t", BLANK, "t")}
    return OrdinalAutomaton.explicit(1, "a", ["s", "t", "f"], "s", steps, {"f"}, [({"t"}, "f")])


def test_blank_self_loop_summary():
    T = build_summaries(loop_machine())
    assert ("q0", frozenset({"q0"}), "qf") in T.levels[1]


def test_no_blank_steps_no_summaries():
    A = OrdinalAutomaton.explicit(2, "a", ["p"], "p", {("p", "a", "p")}, {"p"}, [({"p"}, "p")])
    T = build_summaries(A)
    assert all(not lvl for lvl in T.levels)


def test_blank_two_cycle_summary():
    steps = {("q0", BLANK, "q1"), ("q1", BLANK, "q0")}
    A = OrdinalAutomaton.explicit(1, "a", ["q0", "q1", "q2"], "q0", steps, {"q2"},
                                  [({"q0", "q1"}, "q2")])
    assert ("q0", frozenset({"q0", "q1"}), "q2") in build_summaries(A).levels[1]


def test_gap_summaries_unroll():
    steps = {("p", BLANK, "p"), ("p", BLANK, "r"), ("r", BLANK, "p")}
    A = OrdinalAutomaton.explicit(2, "a", ["p", "r", "l"], "p", steps, {"l"},
                                  [({"p"}, "p"), ({"p", "r"}, "l"), ({"l"}, "p"), ({"p", "l"}, "p")])
    T = build_summaries(A)
    assert {(p, q) for p, _, q in gap_summary(T, parse_cnf("0"))} == {(s, s) for s in A.states}
    two = compose(T.levels[0], T.levels[0])
    assert gap_summary(T, parse_cnf("2")) == two
    g = parse_cnf("w^(1)*2 + w^(0)*1")
    assert gap_summary(T, g) == compose(compose(T.levels[1], T.levels[1]), T.levels[0])


def test_empty_word_acceptor():
    A = single_word(empty_word(2), {"a"})
    assert run_accepts(A, empty_word(2))
    assert not run_accepts(A, FiniteOrdinalWord(2, {(0, 3): "a"}))


def test_missing_letter_rejects():
    A = universal(1, {"b"})
    A = OrdinalAutomaton.explicit(1, {"a", "b"}, A.states, A.initial, A.steps, A.finals,
                                  A.limits.pairs())
    assert not run_accepts(A, FiniteOrdinalWord(1, {(2,): "a"}))


def test_support_exactly_zero():
    A = only_first_a()
    assert run_accepts(A, FiniteOrdinalWord(1, {(0,): "a"}))
    assert not run_accepts(A, FiniteOrdinalWord(1, {(1,): "a"}))


def test_undeclared_states_rejected():
    with pytest.raises(AutomatonError):
        OrdinalAutomaton.explicit(1, "a", ["p"], "p", {("p", "a", "z")}, set())
    with pytest.raises(AutomatonError):
        OrdinalAutomaton.explicit(1, {"a", BLANK}, ["p"], "p", set(), set())


@pytest.mark.parametrize("level", [1, 2])
def test_single_word_accepts_itself_only(level):
    grid = word_grid(level, ("a",), max_support=2, box=2)
    for w in grid[::7]:
        A = single_word(w, {"a"})
        for v in grid:
            assert run_accepts(A, v) == (v == w)


def test_idempotent_and_identity_laws():
    rng = random.Random(11)
    grid = word_grid(1, ("a", "b"), 2, 3)
    for _ in range(10):
        A = random_automaton(rng, 1)
        AA = intersection(A, A)
        AE = union(A, empty_language(1, {"a", "b"}))
        for w in grid:
            r = run_accepts(A, w)
            assert run_accepts(AA, w) == r == run_accepts(AE, w)


def test_two_singletons_intersect_to_nothing():
    w1 = FiniteOrdinalWord(2, {(0, 1): "a"})
    w2 = FiniteOrdinalWord(2, {(1, 0): "a"})
    both = intersection(single_word(w1), single_word(w2))
    assert not any(run_accepts(both, w) for w in word_grid(2, ("a",), 2, 2))
    assert emptiness_finite_support(both)


@settings(max_examples=25)
@given(st.integers(0, 10**6), words(2, max_support=2, box=2))
def test_runs_agree_with_naive_oracle(seed, w):
    A = random_automaton(random.Random(seed), 2)
    assert run_accepts(A, w) == naive_accepts(A, w)


@settings(max_examples=25)
@given(st.integers(0, 10**6), words(1))
def test_boolean_combinations_pointwise(seed, w):
    rng = random.Random(seed)
    A, B = random_automaton(rng, 1), random_automaton(rng, 1)
    a, b = run_accepts(A, w), run_accepts(B, w)
    assert run_accepts(intersection(A, B), w) == (a and b)
    assert run_accepts(union(A, B), w) == (a or b)


def test_emptiness_cases():
    A = OrdinalAutomaton.explicit(1, "a", ["p"], "p", {("p", BLANK, "p")}, set(), [({"p"}, "p")])
    assert emptiness_finite_support(A)
    assert not emptiness_finite_support(single_word(empty_word(1), {"a"}))
    # the only accepting route reads a letter outside the alphabet
    steps = {("p", BLANK, "p")}
    B = OrdinalAutomaton.explicit(1, "a", ["p", "f"], "p", steps, {"f"}, [({"f"}, "f")])
    assert emptiness_finite_support(B)


def omega_of_a():
    return OrdinalAutomaton.explicit(1, "a", ["q", "acc"], "q", {("q", "a", "q")}, {"acc"},
                                     [({"q"}, "acc")])


def test_substituting_empty_blocks():
    R = omega_of_a()
    S = substitute(R, {"a": single_word(empty_word(1), {"x"})})
    assert run_accepts(S, empty_word(2))
    assert not any(run_accepts(S, w) for w in word_grid(2, ("x",), 2, 2)[1:])


def test_substituting_empty_language():
    S = substitute(omega_of_a(), {"a": empty_language(1, {"x"})})
    assert emptiness_finite_support(S)


def test_alternating_blocks_leave_no_finite_word():
    steps = {("s", "a", "t"), ("t", "b", "s")}
    R = OrdinalAutomaton.explicit(1, "ab", ["s", "t", "acc"], "s", steps, {"acc"},
                                  [({"s", "t"}, "acc")])
    x_at_0 = single_word(FiniteOrdinalWord(1, {(0,): "x"}), {"x"})
    S = substitute(R, {"a": x_at_0, "b": single_word(empty_word(1), {"x"})})
    assert emptiness_finite_support(S)


def test_disjointness_precheck():
    wa = single_word(FiniteOrdinalWord(1, {(0,): "x"}), {"x"})
    wb = single_word(FiniteOrdinalWord(1, {(1,): "x"}), {"x"})
    assert not check_disjoint_substitution({"a": wa, "b": wa})
    assert check_disjoint_substitution({"a": wa, "b": wb})
    only_x = single_word(FiniteOrdinalWord(1, {(0,): "x"}), {"x", "y"})
    only_y = single_word(FiniteOrdinalWord(1, {(0,): "y"}), {"x", "y"})
    assert check_disjoint_substitution({"a": only_x, "b": only_y})


def test_relabel_cases():
    A = single_word(FiniteOrdinalWord(1, {(1,): "a"}), {"a", "b"})
    grid = word_grid(1, ("a", "b"), 1, 3)
    same = relabel(A, {"a": {"a"}, "b": {"b"}})
    assert all(run_accepts(same, w) == run_accepts(A, w) for w in grid)
    gone = relabel(universal(1, {"a", "b"}), {"a": set(), "b": set()})
    assert gone.alphabet == frozenset() and run_accepts(gone, empty_word(1))
    both = relabel(A, {"a": {"a", "b"}, "b": {"b"}})
    assert sum(run_accepts(both, w) for w in grid) == 2
