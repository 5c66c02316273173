import pytest
from hypothesis import given, strategies as st

from ordauto import events as ev
from ordauto.logic import (
    FormulaError,
    FormulaSyntaxError,
    define_relation,
    domain_elements,
    evaluate_sentence,
    format_formula,
    free_vars,
    oracle_evaluate,
    ordinal_constant,
    ordinal_structure,
    parse_formula,
    quantifier_depth,
    rename_apart,
    share_tracks,
)
from ordauto.ordinals import Order, cnf_compare, parse_cnf
from ordauto.presentations import decode_word, encode_ordinal

W = "w^(1)*1"


@pytest.fixture(scope="module")
def w_plus_2():
    return ordinal_structure(1, parse_cnf(W + " + 2"))


@pytest.fixture(scope="module")
def w_times_2():
    S = ordinal_structure(1, parse_cnf("w^(1)*2"))
    ordinal_constant(S, "c", parse_cnf(W))
    return S


# syntax

def test_parse_format_round_trip():
    text = "A x . (E y . (lt(x,y) & ~eq(y,x))) | Einf z . c(z)"
    phi = parse_formula(text)
    assert parse_formula(format_formula(phi)) == phi
    assert free_vars(parse_formula("E y . x < y & z = y")) == ["x", "z"]
    assert quantifier_depth(phi) == 2


def test_implication_is_right_associative():
    assert parse_formula("a(x) -> b(x) -> c(x)") == parse_formula("a(x) -> (b(x) -> c(x))")


def test_syntax_errors_carry_offsets():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("E x . (x < ")
    assert info.value.pos >= 9


def test_rename_apart_separates_bound_names():
    phi = rename_apart(parse_formula("(E x . x = x) & (E x . c(x)) & c(x)"))
    assert free_vars(phi) == ["x"]
    text = format_formula(phi)
    assert text.count("x#") >= 2


def test_sibling_binders_share_a_track():
    phi = parse_formula("(E y . y < x) & (A y . E z . (y < z & z < x))")
    shared = share_tracks(phi)
    assert free_vars(shared) == ["x"]
    assert format_formula(shared).count("#1") >= 2
    assert "#3" not in format_formula(shared)


# engine

def test_identity_defines_the_domain(w_plus_2):
    R = define_relation(w_plus_2, "x = x")
    D = ev.compile_automaton(w_plus_2.domain)
    for word in ev.canonical_words(1, w_plus_2.alphabet, 5):
        assert R.nfa.accepts(word) == D.accepts(word)


def test_continuum_quantifier_is_empty(w_plus_2):
    assert not evaluate_sentence(w_plus_2, "Econt x . x = x")
    R = define_relation(w_plus_2, "Econt y . x < y")
    assert ev.nfa_is_empty(R.nfa)


def test_having_a_predecessor(w_plus_2):
    R = define_relation(w_plus_2, "E y . y < x")
    elements = domain_elements(w_plus_2, 6)
    got = {decode_word(w, 1) for w in elements if R.accepts(w)}
    assert {parse_cnf(t) for t in ("1", "5", W, W + " + 1")} <= got
    assert got == {decode_word(w, 1) for w in elements} - {parse_cnf("0")}


def test_linearity_and_least_element(w_plus_2):
    assert evaluate_sentence(w_plus_2, "A x . A y . (lt(x,y) | eq(x,y) | lt(y,x))")
    assert evaluate_sentence(w_plus_2, "E x . A y . ~(y < x)")


def test_infinitely_many_below_omega(w_times_2):
    assert evaluate_sentence(w_times_2, "Einf x . E y . (c(y) & x < y)")
    assert not evaluate_sentence(w_times_2, "Einf x . E y . (c(y) & y < x & A z . ~(y < z & z < x))")


def test_oracle_agrees_at_small_bound(w_plus_2):
    s = "A x . A y . (lt(x,y) | eq(x,y) | lt(y,x))"
    assert oracle_evaluate(w_plus_2, s, 4)
    assert oracle_evaluate(w_plus_2, "E x . A y . (y < x | y = x)", 4)


def test_sentences_only(w_plus_2):
    with pytest.raises(FormulaError):
        evaluate_sentence(w_plus_2, "x < x")
    with pytest.raises(FormulaError):
        evaluate_sentence(w_plus_2, "E x . nope(x)")


# invariants

PROBES = [
    "E x . A y . (y < x | y = x)",
    "A x . E y . x < y",
    "E x . E y . (x < y & A z . ~(x < z & z < y))",
    "Einf x . E y . x < y",
]


@pytest.mark.parametrize("text", PROBES)
def test_double_negation(w_plus_2, text):
    assert evaluate_sentence(w_plus_2, f"~ ~ ({text})") == evaluate_sentence(w_plus_2, text)


@pytest.mark.parametrize("body", ["E y . x < y", "c(x) -> E y . y < x", "x = x"])
def test_quantifier_duality(w_times_2, body):
    forall = evaluate_sentence(w_times_2, f"A x . ({body})")
    assert forall == evaluate_sentence(w_times_2, f"~ E x . ~({body})")


@pytest.mark.parametrize("bound,successor", [
    ("3", True), (W, False), (W + " + 2", True), ("w^(1)*2", False),
    ("w^(2)*1 + w^(0)*1", True),
])
def test_greatest_element_iff_successor(bound, successor):
    S = ordinal_structure(1, parse_cnf(bound))
    assert parse_cnf(bound).is_successor == successor
    assert evaluate_sentence(S, "E x . A y . (y < x | y = x)") == successor


@given(st.integers(1, 4), st.integers(0, 3))
def test_constant_is_unique(k, c):
    S = ordinal_structure(1, parse_cnf(str(k + c)))
    ordinal_constant(S, "c", parse_cnf(str(c)))
    assert S.holds("c", (encode_ordinal(parse_cnf(str(c)), 1),))
    assert evaluate_sentence(S, "E x . (c(x) & A y . (c(y) -> y = x))")
