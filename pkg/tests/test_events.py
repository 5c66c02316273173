import itertools
import random

from hypothesis import given, settings, strategies as st

from ordauto import events as ev
from ordauto.automaton import OrdinalAutomaton, run_accepts, single_word
from ordauto.events import Digit, EventNFA
from ordauto.generators import random_automaton
from ordauto.ordinals import cnf_add, parse_cnf
from ordauto.words import BLANK, FiniteOrdinalWord, convolve, empty_word

from strategies import words


def syms(text):
    return tuple(Digit(int(t[1:])) if t[0] == "d" and t[1:].isdigit() else t for t in text.split())


def line(n, alphabet, word):
    """NFA accepting exactly one symbol string."""
    trans = {(i, s): {i + 1} for i, s in enumerate(word)}
    return EventNFA(n, alphabet, tuple(range(len(word) + 1)), {0}, trans, {len(word)})


def language(E, n, alphabet, max_len):
    return {w for w in ev.canonical_words(n, alphabet, max_len) if E.accepts(w)}


def test_empty_word_acceptor_compiles_to_epsilon():
    E = ev.compile_automaton(single_word(empty_word(2), {"a"}))
    assert language(E, 2, {"a"}, 4) == {()}


def test_no_finals_no_finals():
    A = OrdinalAutomaton.explicit(1, "a", ["p"], "p", {("p", BLANK, "p")}, set(), [({"p"}, "p")])
    assert not ev.compile_automaton(A).finals


def test_compiled_matches_runs_at_level_two():
    rng = random.Random(5)
    for _ in range(6):
        A = random_automaton(rng, 2, max_states=3)
        E = ev.compile_automaton(A)
        for w in ev.canonical_words(2, A.alphabet, 4):
            assert E.accepts(w) == run_accepts(A, ev.decode_digits(w, 2))


def test_canonical_domain_examples():
    D = ev.canonical_domain(2, {"a", "b"})
    assert D.accepts(())
    assert not D.accepts(syms("d0 d1 a"))
    assert D.accepts(syms("d1 d1 d0 a d0 b"))
    assert not D.accepts(syms("a d0"))


@given(words(2))
def test_encode_decode(w):
    assert ev.decode_digits(ev.encode_word(w), 2) == w
    assert ev.canonical_domain(2, {"a", "b"}).accepts(ev.encode_word(w))


def test_canonical_words_are_exactly_the_domain():
    D = ev.canonical_domain(2, {"a"})
    every = [()]
    for k in range(1, 6):
        every += list(itertools.product([Digit(0), Digit(1), "a"], repeat=k))
    assert {w for w in every if D.accepts(w)} == set(ev.canonical_words(2, {"a"}, 5))


def test_boolean_laws():
    rng = random.Random(3)
    for _ in range(8):
        E1 = ev.compile_automaton(random_automaton(rng, 2, max_states=3))
        E2 = ev.compile_automaton(random_automaton(rng, 2, max_states=3))
        D = ev.canonical_domain(2, E1.alphabet)
        nn = ev.complement(ev.complement(E1))
        dm_and = ev.complement(ev.intersect(E1, E2))
        dm_or = ev.union(ev.complement(E1), ev.complement(E2))
        restricted = ev.intersect(E1, D)
        small = ev.minimize(E1)
        for w in ev.canonical_words(2, E1.alphabet, 6):
            a, b = E1.accepts(w), E2.accepts(w)
            assert nn.accepts(w) == a == restricted.accepts(w) == small.accepts(w)
            assert dm_and.accepts(w) == dm_or.accepts(w) == (not (a and b))


def test_complement_stays_canonical():
    E = ev.complement(ev.empty_nfa(2, {"a"}))
    assert not E.accepts(syms("d0 d1 a"))
    assert E.accepts(syms("d1 d0 a"))


def test_erasing_a_blank_track_changes_nothing():
    w = convolve(FiniteOrdinalWord(1, {(2,): "a"}), FiniteOrdinalWord(1, {}))
    alphabet = frozenset({("a", BLANK), (BLANK, "a"), ("a", "a")})
    E = line(1, alphabet, ev.encode_word(w))
    assert language(ev.erase_track(E, 1), 1, alphabet, 5) == {ev.encode_word(w)}


def test_erasing_second_track_of_a_pair():
    alphabet = frozenset({("a", "b"), ("a", BLANK), (BLANK, "b")})
    E = line(1, alphabet, (("a", "b"),))
    assert language(ev.erase_track(E, 1), 1, alphabet, 3) == {(("a", BLANK),)}


def test_erasing_the_only_event_leaves_epsilon():
    alphabet = frozenset({("a", BLANK), (BLANK, "a")})
    E = line(1, alphabet, syms("d0 d0 d0 d0 d0") + ((BLANK, "a"),))
    assert language(ev.erase_track(E, 1), 1, alphabet, 7) == {()}


def test_normalize_fixes_canonical_words():
    w = syms("d1 a d0 d0 b")
    assert language(ev.normalize(line(2, {"a", "b"}, w)), 2, {"a", "b"}, 6) == {w}


def test_normalize_absorbs():
    assert language(ev.normalize(line(2, {"a"}, syms("d0 d1 a"))), 2, {"a"}, 4) == {syms("d1 a")}
    got = language(ev.normalize(line(2, {"a"}, syms("d0 d1 d0 d1 a"))), 2, {"a"}, 6)
    assert got == {syms("d1 d1 a")}


@settings(max_examples=40)
@given(st.lists(st.integers(0, 2), max_size=6))
def test_normalized_gap_has_the_same_value(ks):
    digits = tuple(Digit(k) for k in ks)
    (out,) = language(ev.normalize(line(3, {"a"}, digits + ("a",))), 3, {"a"}, 8)
    value = parse_cnf("0")
    for k in ks:
        value = cnf_add(value, ev.gap_value((Digit(k),)))
    assert ev.gap_value(out[:-1]) == value


def test_infinite_fibers_all_words():
    alphabet = frozenset({("a",)})
    D = ev.canonical_domain(1, alphabet)
    assert ev.infinite_fibers(D, 0).accepts(())


def test_infinite_fibers_finite_language():
    alphabet = frozenset({("a",)})
    E = line(1, alphabet, syms("d0") + (("a",),))
    assert ev.nfa_is_empty(ev.infinite_fibers(E, 0))


def test_infinite_fiber_over_fixed_second_track():
    # track 0 arbitrary, track 1 is the word with one b at position 1
    letters = ev.blank_tracks(1, {"a", "b"}, 2, ()).alphabet
    u = FiniteOrdinalWord(1, {(1,): "b"})
    trans = {}
    # states: 0 before the b, 1 after it
    for a in letters:
        if a[1] == BLANK:
            trans.setdefault((0, a), set()).add(0)
            trans.setdefault((1, a), set()).add(1)
    trans[0, Digit(0)] = {0}
    trans[1, Digit(0)] = {1}
    for a in letters:
        if a[1] == "b":
            trans.setdefault((0, a), set()).add(1)
    E = ev.trim(EventNFA(1, letters, (0, 1), {0}, trans, {1}))
    F = ev.infinite_fibers(E, 0)
    target = ev.encode_word(convolve(FiniteOrdinalWord(1, {}), u))
    assert F.accepts(target)
    # the fiber over a word with no b on track 1 is empty
    assert not F.accepts(())
