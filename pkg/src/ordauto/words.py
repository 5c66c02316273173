"""Finite omega^n-words: all but finitely many letters are the blank."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .ordinals import (
    LevelMismatch,
    OrdinalCNF,
    cnf_add,
    cnf_left_subtract,
    small_to_vec,
    vec_to_small,
)

BLANK = "_"


class WordError(ValueError):
    pass


def is_blank(letter) -> bool:
    """The blank, or a tuple letter that is blank on every track."""
    if letter == BLANK:
        return True
    return isinstance(letter, tuple) and all(x == BLANK for x in letter)


def letter_str(letter) -> str:
    if isinstance(letter, tuple):
        return "(" + ",".join(letter_str(x) for x in letter) + ")"
    return str(letter)


def parse_letter(token: str):
    token = token.strip()
    if token.startswith("(") and token.endswith(")"):
        return tuple(parse_letter(x) for x in token[1:-1].split(","))
    return token


@dataclass(frozen=True)
class FiniteOrdinalWord:
    level: int
    support: Mapping = field(default_factory=dict)
    alphabet: frozenset | None = None

    def __post_init__(self):
        if self.level < 1:
            raise WordError("level must be >= 1")
        supp = {}
        for pos, letter in dict(self.support).items():
            pos = tuple(pos)
            if len(pos) != self.level or any(g < 0 for g in pos):
                raise WordError(f"position {pos} is not a level-{self.level} position")
            if is_blank(letter):
                raise WordError(f"blank letter at {pos}: blanks are never stored")
            supp[pos] = letter
        if self.alphabet is not None:
            alpha = frozenset(self.alphabet)
            if BLANK in alpha:
                raise WordError("the blank may not be a declared letter")
            bad = set(supp.values()) - alpha
            if bad:
                raise WordError(f"letters {sorted(map(letter_str, bad))} outside alphabet")
            object.__setattr__(self, "alphabet", alpha)
        object.__setattr__(self, "support", dict(sorted(supp.items())))

    def __hash__(self):
        return hash((self.level, tuple(self.support.items())))

    def __eq__(self, other):
        if not isinstance(other, FiniteOrdinalWord):
            return NotImplemented
        return self.level == other.level and self.support == other.support

    def __getitem__(self, pos):
        return self.support.get(tuple(pos), BLANK)

    def positions(self):
        return list(self.support)

    def letters(self) -> frozenset:
        return frozenset(self.support.values())

    def __repr__(self):
        body = ", ".join(f"{p}:{letter_str(a)}" for p, a in self.support.items())
        return f"FiniteOrdinalWord(level={self.level}, {{{body}}})"


def empty_word(level: int) -> FiniteOrdinalWord:
    return FiniteOrdinalWord(level, {})


def convolve(*words: FiniteOrdinalWord) -> FiniteOrdinalWord:
    """Position-wise tuple word; the all-blank tuple is the blank of the result."""
    if not words:
        raise WordError("convolve needs at least one word")
    levels = {w.level for w in words}
    if len(levels) != 1:
        raise LevelMismatch(f"convolving words of levels {sorted(levels)}")
    positions = sorted(set().union(*(w.support for w in words)))
    return FiniteOrdinalWord(
        words[0].level, {p: tuple(w[p] for w in words) for p in positions}
    )


def project(word: FiniteOrdinalWord, track: int) -> FiniteOrdinalWord:
    return FiniteOrdinalWord(
        word.level,
        {p: a[track] for p, a in word.support.items() if a[track] != BLANK},
    )


@dataclass(frozen=True)
class EventSequence:
    """(gap, letter) pairs; gaps are level-1 CNFs below omega^level.

    The blank segment after the last letter is implicit and always has
    order type omega^level.
    """

    level: int
    events: tuple = ()


@lru_cache(maxsize=1 << 16)
def event_decomposition(w: FiniteOrdinalWord) -> EventSequence:
    events = []
    nxt = OrdinalCNF.zero(1)
    for pos, letter in w.support.items():
        p = vec_to_small(pos)
        events.append((cnf_left_subtract(nxt, p), letter))
        nxt = cnf_add(p, OrdinalCNF.natural(1))
    return EventSequence(w.level, tuple(events))


def reconstruct(ev: EventSequence) -> FiniteOrdinalWord:
    supp = {}
    nxt = OrdinalCNF.zero(1)
    for gap, letter in ev.events:
        p = cnf_add(nxt, gap)
        supp[small_to_vec(p, ev.level)] = letter
        nxt = cnf_add(p, OrdinalCNF.natural(1))
    return FiniteOrdinalWord(ev.level, supp)


def gap_digits(gap: OrdinalCNF) -> list[int]:
    """Gap as a most-significant-first list of omega-power levels (with repetition)."""
    out = []
    for (k,), c in gap.terms:
        out.extend([k] * c)
    return out
