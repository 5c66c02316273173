"""Injective automatic presentations of ordinals below omega^(omega^n).

Encoding.  Write xi < omega^(omega^n) in Cantor normal form with exponent
vectors ``(g_{n-1}, ..., g_0)``.  A term ``omega^(t, b...) * c`` puts a mark
on *track* ``t`` at the first ``c`` positions of the innermost omega-block
indexed by ``b`` (the remaining n-1 coordinates), i.e. at positions
``(b..., 0), ..., (b..., c-1)``.  The letter at a position is the set of
tracks marked there, written ``m<t1>+<t2>...``.

Ordinals below ``omega^(omega^(n-1) * K)`` use tracks ``0..K-1`` only, so a
presentation of a bound below omega^(omega^n) has a finite alphabet.
Comparison is lexicographic: highest track first, then the last block in
which the track differs, then the longer run.  All three are tracked by a
deterministic automaton whose limit steps only close the current block.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .automaton import (
    OrdinalAutomaton,
    RuleLimits,
    empty_language,
    intersection,
    map_letters,
    single_word,
)
from .ordinals import LevelMismatch, OrdinalCNF, OrdinalError, format_cnf
from .words import BLANK, FiniteOrdinalWord, WordError, is_blank


class PresentationError(ValueError):
    pass


def track_letter(tracks) -> str:
    return "m" + "+".join(str(t) for t in sorted(tracks))


def letter_tracks(letter) -> frozenset:
    if letter == BLANK:
        return frozenset()
    if not isinstance(letter, str) or not letter.startswith("m"):
        raise WordError(f"bad letter {letter!r}: expected m<track>+<track>...")
    try:
        tracks = [int(t) for t in letter[1:].split("+")]
    except ValueError:
        raise WordError(f"bad letter {letter!r}") from None
    if len(set(tracks)) != len(tracks) or tracks != sorted(tracks) or any(t < 0 for t in tracks):
        raise WordError(f"bad letter {letter!r}: tracks must be distinct and increasing")
    return frozenset(tracks)


def track_alphabet(width: int) -> frozenset:
    return frozenset(
        track_letter(c)
        for size in range(1, width + 1)
        for c in itertools.combinations(range(width), size)
    )


def _as_level(xi: OrdinalCNF, n: int) -> OrdinalCNF:
    if xi.level == n:
        return xi
    if xi.level < n:
        return xi.lifted(n)
    extra = xi.level - n
    if any(any(e[:extra]) for e, _ in xi.terms):
        raise PresentationError(f"{format_cnf(xi)} is not below omega^(omega^{n})")
    return OrdinalCNF(n, tuple((e[extra:], c) for e, c in xi.terms))


def is_presentable(beta: OrdinalCNF, n: int) -> bool:
    """Whether beta < omega^(omega^n), i.e. beta has an injective omega^n presentation."""
    try:
        _as_level(beta, n)
    except PresentationError:
        return False
    return True


def width_of(xi: OrdinalCNF) -> int:
    """Number of tracks the encoding of xi (and of everything below it) needs."""
    return xi.leading_exponent[0] + 1 if xi.terms else 1


def encode_ordinal(xi: OrdinalCNF, n: int) -> FiniteOrdinalWord:
    xi = _as_level(xi, n)
    marks = {}
    for exp, coef in xi.terms:
        track, block = exp[0], exp[1:]
        for i in range(coef):
            marks.setdefault(block + (i,), set()).add(track)
    return FiniteOrdinalWord(n, {p: track_letter(ts) for p, ts in marks.items()})


def decode_word(w: FiniteOrdinalWord, n: int) -> OrdinalCNF:
    if w.level != n:
        raise LevelMismatch(f"word level {w.level}, expected {n}")
    runs = {}
    for pos, letter in w.support.items():
        for t in letter_tracks(letter):
            runs.setdefault((t, pos[:-1]), []).append(pos[-1])
    terms = []
    for (track, block), offsets in runs.items():
        if sorted(offsets) != list(range(len(offsets))):
            raise WordError(
                f"bad run structure: track {track} in block {block} is marked at "
                f"offsets {sorted(offsets)}, expected 0..{len(offsets) - 1}"
            )
        terms.append(((track,) + block, len(offsets)))
    terms.sort(reverse=True)
    return OrdinalCNF(n, tuple(terms))


# automata

_E, _L, _G = "E", "L", "G"


def _squash(last, cur):
    for j in reversed(range(len(last))):
        if last[j] != _E:
            return ((_E,) * j + last[j:], (_E,) * j + cur[j:])
    return last, cur


def _close_block(state):
    last, cur = state
    last = tuple(c if c != _E else v for v, c in zip(last, cur))
    return _squash(last, (_E,) * len(cur))


def _read(state, xs, ys):
    last, cur = state
    cur = tuple(
        (_G if (j in xs and j not in ys) else _L if (j in ys and j not in xs) else _E) if c == _E else c
        for j, c in enumerate(cur)
    )
    return _squash(last, cur)


def pair_alphabet(alphabet) -> frozenset:
    base = sorted(alphabet) + [BLANK]
    return frozenset((x, y) for x in base for y in base if not (x == BLANK and y == BLANK))


def order_automaton(n: int, width: int) -> OrdinalAutomaton:
    """Deterministic comparator: accepts conv(E(xi), E(zeta)) iff xi < zeta."""
    sigma = track_alphabet(width)
    letters = [BLANK] + sorted(pair_alphabet(sigma))
    tracks = {a: letter_tracks(a) for a in sigma | {BLANK}}
    start = ((_E,) * width, (_E,) * width)
    seen = {start}
    todo = deque([start])
    steps, limits = set(), []
    while todo:
        s = todo.popleft()
        succ = [(a, _read(s, tracks[a[0]], tracks[a[1]])) for a in letters if a != BLANK]
        succ.append((BLANK, s))
        for a, t in succ:
            steps.add((s, a, t))
        closed = _close_block(s)
        limits.append(({s}, closed))
        for t in [t for _, t in succ] + [closed]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    finals = {s for s in seen if s[1] == (_E,) * width and _verdict(s[0]) == _L}
    return OrdinalAutomaton.explicit(n, pair_alphabet(sigma), sorted(seen), start, steps, finals, limits)


def _verdict(last):
    for v in reversed(last):
        if v != _E:
            return v
    return _E


def valid_automaton(n: int, width: int) -> OrdinalAutomaton:
    """Accepts exactly the encodings of ordinals below omega^(omega^(n-1) * width)."""
    sigma = sorted(track_alphabet(width))
    states = list(itertools.product((True, False), repeat=width))
    start = (True,) * width
    steps = set()
    for s in states:
        steps.add((s, BLANK, (False,) * width))
        for a in sigma:
            ts = letter_tracks(a)
            if all(s[j] for j in ts):
                steps.add((s, a, tuple(j in ts for j in range(width))))
    limits = RuleLimits(lambda s: frozenset(("any",)), lambda img: {start})
    return OrdinalAutomaton(n, frozenset(sigma), tuple(states), start, frozenset(steps),
                            frozenset({start}), limits)


def below_constant(n: int, width: int, c: FiniteOrdinalWord) -> OrdinalAutomaton:
    """Words x (over the width-track alphabet) with conv(x, c) accepted by the comparator."""
    sigma = track_alphabet(width)
    cmp = order_automaton(n, width)
    base = sorted(sigma) + [BLANK]
    fixed = single_word(c, sigma)
    lifted = map_letters(fixed, lambda y: [(x, y) for x in base], cmp.alphabet)
    pairs = intersection(cmp, lifted)
    return map_letters(pairs, lambda a: [BLANK] if is_blank(a) else [a[0]], sigma)


@dataclass(eq=False)
class Presentation:
    level: int
    bound: OrdinalCNF
    width: int
    domain: OrdinalAutomaton
    order: OrdinalAutomaton

    @property
    def alphabet(self) -> frozenset:
        return track_alphabet(self.width)

    def encode(self, xi: OrdinalCNF) -> FiniteOrdinalWord:
        return encode_ordinal(xi, self.level)

    def decode(self, w: FiniteOrdinalWord) -> OrdinalCNF:
        return decode_word(w, self.level)


def build_order_automaton(n: int, bound: OrdinalCNF) -> Presentation:
    """Presentation of the ordinal `bound` (< omega^(omega^n)) at level n."""
    if n < 1:
        raise PresentationError("level must be >= 1")
    if not is_presentable(bound, n):
        raise PresentationError(
            f"{format_cnf(bound)} is not smaller than omega^(omega^{n}); no injective "
            f"omega^{n} presentation exists"
        )
    beta = _as_level(bound, n)
    width = width_of(beta)
    cmp = order_automaton(n, width)
    if beta.is_zero:
        domain = empty_language(n, track_alphabet(width))
    else:
        domain = intersection(valid_automaton(n, width), below_constant(n, width, encode_ordinal(beta, n)))
    return Presentation(n, beta, width, domain, cmp)


def bounded_grid(level: int, max_terms: int = 3, max_coord: int = 3, max_coef: int = 3):
    """All CNFs with <= max_terms terms, exponent coords <= max_coord, coefficients <= max_coef."""
    exps = sorted(itertools.product(range(max_coord + 1), repeat=level), reverse=True)
    out = []
    for k in range(max_terms + 1):
        for chosen in itertools.combinations(exps, k):
            for coefs in itertools.product(range(1, max_coef + 1), repeat=k):
                out.append(OrdinalCNF(level, tuple(zip(chosen, coefs))))
    return out


def parse_bound(text: str, n: int) -> OrdinalCNF:
    from .ordinals import parse_cnf

    try:
        return parse_cnf(text)
    except OrdinalError:
        return parse_cnf(text, n)
