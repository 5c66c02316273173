import pytest

from ordauto.countable import (
    NondeterministicInput,
    check_witness,
    countability_level1,
    decomposition_accepts,
    omega_accepts,
)
from ordauto.automaton import OrdinalAutomaton
from ordauto.generators import countability_suite, lasso_words

CASES = {c.name: c for c in countability_suite()}


@pytest.mark.parametrize("name", sorted(CASES))
def test_verdicts(name):
    case = CASES[name]
    res = countability_level1(case.automaton)
    assert res.countable == case.countable
    assert res.verdict == ("COUNTABLE" if case.countable else "UNCOUNTABLE")


def test_full_language_witness_uses_both_letters():
    w = countability_level1(CASES["(a+b)^w"].automaton).witness
    assert sorted(c[0] for c in w.cycles) == ["a", "b"]
    assert check_witness(CASES["(a+b)^w"].automaton, w)


def test_a_omega_decomposition():
    res = countability_level1(CASES["a^w"].automaton)
    ((U, v),) = res.decomposition
    assert U.accepts(()) and tuple(v) == ("a",)


@pytest.mark.parametrize("name", [n for n, c in CASES.items() if c.countable])
def test_decompositions_match_membership(name):
    A = CASES[name].automaton
    decomp = countability_level1(A).decomposition
    for u, v in lasso_words():
        assert decomposition_accepts(decomp, u, v) == omega_accepts(A, u, v)


@pytest.mark.parametrize("name", [n for n, c in CASES.items() if not c.countable])
def test_witnesses_check_out(name):
    A = CASES[name].automaton
    assert check_witness(A, countability_level1(A).witness)


def test_needs_a_deterministic_machine():
    steps = {("q", "a", "q"), ("q", "a", "r"), ("r", "a", "r")}
    A = OrdinalAutomaton.explicit(1, "a", ["q", "r", "f"], "q", steps, {"f"}, [({"r"}, "f")])
    with pytest.raises(NondeterministicInput):
        countability_level1(A)
