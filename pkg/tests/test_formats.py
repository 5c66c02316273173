import random

import pytest
from hypothesis import given, settings, strategies as st

from ordauto import events as ev
from ordauto.automaton import run_accepts
from ordauto.formats import (
    FormatError,
    PresentationSpec,
    read_automaton,
    read_cnf,
    read_eventnfa,
    read_presentation,
    read_word,
    sniff,
    write_automaton,
    write_cnf,
    write_eventnfa,
    write_presentation,
    write_word,
)
from ordauto.generators import random_automaton, word_grid
from ordauto.ordinals import parse_cnf
from ordauto.presentations import build_order_automaton

from strategies import cnfs, words


@given(cnfs(3))
def test_cnf_text(x):
    text = write_cnf(x)
    assert read_cnf(text) == x and write_cnf(read_cnf(text)) == text
    assert sniff(text) == "cnf"


@given(words(2))
def test_word_text(w):
    text = write_word(w, {"a", "b"})
    assert read_word(text) == w and write_word(read_word(text), {"a", "b"}) == text


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_automaton_text(seed):
    A = random_automaton(random.Random(seed), 1)
    text = write_automaton(A)
    B = read_automaton(text)
    assert write_automaton(B) == text
    for w in word_grid(1, ("a", "b"), 2, 2):
        assert run_accepts(A, w) == run_accepts(B, w)


def test_rule_based_automata_are_written_explicitly():
    P = build_order_automaton(1, parse_cnf("w^(1)*1 + 1"))
    text = write_automaton(P.domain)
    assert write_automaton(read_automaton(text)) == text


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_eventnfa_text(seed):
    E = ev.compile_automaton(random_automaton(random.Random(seed), 2, max_states=3))
    text = write_eventnfa(E)
    F = read_eventnfa(text)
    assert write_eventnfa(F) == text and sniff(text) == "eventnfa"
    for w in ev.canonical_words(2, E.alphabet, 4):
        assert E.accepts(w) == F.accepts(w)


def test_presentation_text():
    spec = PresentationSpec(2, parse_cnf("w^(1,0)*1", 2), {"c": parse_cnf("w^(0,2)*1", 2)})
    text = write_presentation(spec)
    assert write_presentation(read_presentation(text)) == text
    assert sniff(text) == "presentation"


@pytest.mark.parametrize("text,line", [
    ("level 1\ncnf w^(1)*\n", 2),
    ("level 1\nalphabet a\npos (0,1) a\n", 3),
    ("level 1\nalphabet a\nstates p\ninitial z\nfinal p\n", 4),
    ("presentation\nlevel x\n", 2),
])
def test_errors_name_the_line(text, line):
    reader = {"cnf": read_cnf, "word": read_word, "automaton": read_automaton,
              "presentation": read_presentation}[sniff(text)]
    with pytest.raises(FormatError) as info:
        reader(text, "in.txt")
    assert info.value.line == line
    assert str(info.value).startswith(f"in.txt:{line}:")
