import pytest
from hypothesis import given

from ordauto.ordinals import parse_cnf
from ordauto.words import (
    BLANK,
    FiniteOrdinalWord,
    WordError,
    convolve,
    empty_word,
    event_decomposition,
    project,
    reconstruct,
)

from strategies import words


def test_self_convolution_pairs_letters():
    x = FiniteOrdinalWord(1, {(0,): "a"})
    assert convolve(x, x).support == {(0,): ("a", "a")}


def test_convolving_empty_words():
    assert convolve(empty_word(2), empty_word(2)) == empty_word(2)


def test_convolution_is_positional_union():
    x = FiniteOrdinalWord(2, {(0, 1): "a"})
    y = FiniteOrdinalWord(2, {(1, 0): "b"})
    assert convolve(x, y).support == {(0, 1): ("a", BLANK), (1, 0): (BLANK, "b")}


def test_empty_word_has_no_events():
    assert event_decomposition(empty_word(3)).events == ()


def test_gaps_at_level_one():
    w = FiniteOrdinalWord(1, {(3,): "a", (5,): "b"})
    ev = event_decomposition(w).events
    assert [(g, a) for g, a in ev] == [(parse_cnf("3"), "a"), (parse_cnf("1"), "b")]


def test_gap_up_to_omega():
    ev = event_decomposition(FiniteOrdinalWord(2, {(1, 0): "a"})).events
    assert ev == ((parse_cnf("w^(1)*1"), "a"),)


def test_blank_letters_are_rejected():
    with pytest.raises(WordError):
        FiniteOrdinalWord(1, {(0,): BLANK})
    with pytest.raises(WordError):
        FiniteOrdinalWord(2, {(0,): "a"})


@given(words(2))
def test_events_rebuild_the_word(w):
    assert reconstruct(event_decomposition(w)) == w


@given(words(1), words(1))
def test_projection_undoes_convolution(x, y):
    xy = convolve(x, y)
    assert project(xy, 0) == x and project(xy, 1) == y
