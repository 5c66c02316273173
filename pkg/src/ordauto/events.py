"""Classical automata over the digit/event encoding of finite omega^n-words.

A finite omega^n-word is written as, for each non-blank letter in order,
the gap before it as digits ``d_k`` (one per omega^k, most significant
first) followed by the letter.  The blank tail is not written.  Ordinary
finite automata over this encoding support determinization, complement,
projection and infinity tests.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .automaton import OrdinalAutomaton, build_summaries, tuple_alphabet
from .ordinals import OrdinalCNF, cnf_add
from .words import (
    BLANK,
    FiniteOrdinalWord,
    WordError,
    event_decomposition,
    gap_digits,
    is_blank,
    letter_str,
    reconstruct,
    EventSequence,
)

EMPTY = frozenset()


@dataclass(frozen=True, order=True)
class Digit:
    k: int

    def __str__(self):
        return f"d{self.k}"

    __repr__ = __str__


def is_digit(sym) -> bool:
    return isinstance(sym, Digit)


def _sym_key(sym):
    return (0, sym.k, "") if is_digit(sym) else (1, 0, letter_str(sym))


@dataclass(eq=False)
class EventNFA:
    level: int
    alphabet: frozenset
    states: tuple
    initial: frozenset
    trans: dict
    finals: frozenset
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self.alphabet = frozenset(self.alphabet)
        self.initial = frozenset(self.initial)
        self.finals = frozenset(self.finals)
        self.trans = {k: frozenset(v) for k, v in self.trans.items() if v}

    @property
    def symbols(self) -> list:
        return [Digit(k) for k in range(self.level)] + sorted(self.alphabet, key=letter_str)

    def successors(self, state, sym) -> frozenset:
        return self.trans.get((state, sym), EMPTY)

    @property
    def out_edges(self) -> dict:
        if self._index is None:
            idx = defaultdict(list)
            for (p, a), qs in self.trans.items():
                for q in qs:
                    idx[p].append((a, q))
            self._index = dict(idx)
        return self._index

    def accepts(self, word) -> bool:
        current = set(self.initial)
        for sym in word:
            nxt = set()
            for p in current:
                nxt |= self.successors(p, sym)
            current = nxt
            if not current:
                return False
        return not current.isdisjoint(self.finals)


# encoding

def encode_word(w: FiniteOrdinalWord) -> tuple:
    out = []
    for gap, letter in event_decomposition(w).events:
        out.extend(Digit(k) for k in gap_digits(gap))
        out.append(letter)
    return tuple(out)


def is_canonical(word, n: int) -> bool:
    last = None
    for sym in word:
        if is_digit(sym):
            if sym.k >= n or (last is not None and sym.k > last):
                return False
            last = sym.k
        else:
            last = None
    return last is None


def decode_digits(word, n: int) -> FiniteOrdinalWord:
    if not is_canonical(word, n):
        raise WordError(f"not a canonical level-{n} digit word: {' '.join(map(str, word))}")
    events, digits = [], []
    for sym in word:
        if is_digit(sym):
            digits.append(sym.k)
        else:
            terms = [((k,), len(list(g))) for k, g in itertools.groupby(digits)]
            events.append((OrdinalCNF(1, tuple(terms)), sym))
            digits = []
    return reconstruct(EventSequence(n, tuple(events)))


def canonical_words(n: int, alphabet, max_len: int):
    """All canonical digit words of length <= max_len (shortest first)."""
    letters = sorted(alphabet, key=letter_str)
    digits = [Digit(k) for k in range(n)]

    def extend(prefix, last, budget):
        if last is None:
            yield prefix
        if budget == 0:
            return
        for d in digits:
            if last is None or d.k <= last:
                yield from extend(prefix + (d,), d.k, budget - 1)
        for a in letters:
            yield from extend(prefix + (a,), None, budget - 1)

    words = list(extend((), None, max_len))
    words.sort(key=len)
    return words


# compilation

def compile_automaton(A: OrdinalAutomaton) -> EventNFA:
    """Event automaton accepting the encodings of the finite words A accepts."""
    cached = A._cache.get("compiled")
    if cached is not None:
        return cached
    T = build_summaries(A)
    trans = defaultdict(set)
    for k in range(A.level):
        for p, _, q in T.levels[k]:
            trans[p, Digit(k)].add(q)
    for p, a, q in A.steps:
        if a != BLANK:
            trans[p, a].add(q)
    finals = {p for p, _, f in T.levels[A.level] if f in A.finals}
    E = EventNFA(A.level, A.alphabet, A.states, {A.initial}, trans, finals)
    A._cache["compiled"] = E
    return E


def canonical_domain(n: int, alphabet) -> EventNFA:
    trans = defaultdict(set)
    states = ["L"] + [("D", k) for k in range(n)]
    for src in states:
        for k in range(n):
            if src == "L" or k <= src[1]:
                trans[src, Digit(k)].add(("D", k))
        for a in alphabet:
            trans[src, a].add("L")
    return EventNFA(n, alphabet, tuple(states), {"L"}, trans, {"L"})


def _check_compatible(E1, E2):
    if E1.level != E2.level or E1.alphabet != E2.alphabet:
        raise ValueError("event automata over different symbol sets")


def trim(E: EventNFA) -> EventNFA:
    fwd = _reach(E.initial, E.out_edges)
    back = defaultdict(list)
    for (p, a), qs in E.trans.items():
        for q in qs:
            back[q].append((a, p))
    useful = fwd & _reach(E.finals, back)
    trans = {}
    for (p, a), qs in E.trans.items():
        if p in useful:
            keep = qs & useful
            if keep:
                trans[p, a] = keep
    states = tuple(s for s in E.states if s in useful)
    return EventNFA(E.level, E.alphabet, states, E.initial & useful, trans, E.finals & useful)


def _reach(start, edges):
    seen = set(start)
    todo = deque(start)
    while todo:
        p = todo.popleft()
        for _, q in edges.get(p, ()):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def nfa_is_empty(E: EventNFA) -> bool:
    return _reach(E.initial, E.out_edges).isdisjoint(E.finals)


def shortest_accepted(E: EventNFA):
    prev = {s: None for s in E.initial}
    todo = deque(E.initial)
    while todo:
        p = todo.popleft()
        if p in E.finals:
            out = []
            while prev[p] is not None:
                p, a = prev[p]
                out.append(a)
            return tuple(reversed(out))
        for a, q in sorted(E.out_edges.get(p, ()), key=lambda e: _sym_key(e[0])):
            if q not in prev:
                prev[q] = (p, a)
                todo.append(q)
    return None


def determinize(E: EventNFA) -> EventNFA:
    """Complete subset construction (the empty set is the dead state)."""
    syms = E.symbols
    start = frozenset(E.initial)
    seen = {start}
    todo = deque([start])
    trans = {}
    while todo:
        S = todo.popleft()
        for a in syms:
            T = frozenset().union(*(E.successors(p, a) for p in S)) if S else EMPTY
            trans[S, a] = {T}
            if T not in seen:
                seen.add(T)
                todo.append(T)
    finals = {S for S in seen if not S.isdisjoint(E.finals)}
    return EventNFA(E.level, E.alphabet, tuple(seen), {start}, trans, finals)


def intersect(E1: EventNFA, E2: EventNFA) -> EventNFA:
    _check_compatible(E1, E2)
    start = {(p, q) for p in E1.initial for q in E2.initial}
    seen = set(start)
    todo = deque(start)
    trans = {}
    while todo:
        p, q = todo.popleft()
        by_sym = defaultdict(list)
        for a, q2 in E2.out_edges.get(q, ()):
            by_sym[a].append(q2)
        for a, p2 in E1.out_edges.get(p, ()):
            for q2 in by_sym.get(a, ()):
                trans.setdefault(((p, q), a), set()).add((p2, q2))
                if (p2, q2) not in seen:
                    seen.add((p2, q2))
                    todo.append((p2, q2))
    finals = {s for s in seen if s[0] in E1.finals and s[1] in E2.finals}
    return trim(EventNFA(E1.level, E1.alphabet, tuple(seen), start, trans, finals))


def union(E1: EventNFA, E2: EventNFA) -> EventNFA:
    _check_compatible(E1, E2)
    trans = {}
    for tag, E in ((0, E1), (1, E2)):
        for (p, a), qs in E.trans.items():
            trans[(tag, p), a] = {(tag, q) for q in qs}
    return EventNFA(
        E1.level, E1.alphabet,
        tuple((0, s) for s in E1.states) + tuple((1, s) for s in E2.states),
        {(0, s) for s in E1.initial} | {(1, s) for s in E2.initial},
        trans,
        {(0, s) for s in E1.finals} | {(1, s) for s in E2.finals},
    )


def complement(E: EventNFA) -> EventNFA:
    """Canonical words not accepted by E."""
    D = determinize(E)
    flipped = EventNFA(D.level, D.alphabet, D.states, D.initial, D.trans, set(D.states) - D.finals)
    return intersect(flipped, canonical_domain(E.level, E.alphabet))


def minimize(E: EventNFA) -> EventNFA:
    """Minimal trim DFA for L(E) (Moore refinement), states renamed 0..k-1."""
    D = determinize(E)
    syms = D.symbols
    delta = {(p, a): next(iter(qs)) for (p, a), qs in D.trans.items()}
    block = {s: int(s in D.finals) for s in D.states}
    count = len(set(block.values()))
    while True:
        sig = {s: (block[s],) + tuple(block[delta[s, a]] for a in syms) for s in D.states}
        ids = {}
        block = {s: ids.setdefault(sig[s], len(ids)) for s in D.states}
        if len(ids) == count:
            break
        count = len(ids)
    start = block[next(iter(D.initial))]
    trans = {(block[p], a): {block[q]} for (p, a), q in delta.items()}
    finals = {block[s] for s in D.finals}
    return trim(EventNFA(D.level, D.alphabet, tuple(range(count)), {start}, trans, finals))


def empty_nfa(n: int, alphabet) -> EventNFA:
    return EventNFA(n, alphabet, ("x",), {"x"}, {}, ())


def renamed(E: EventNFA, prefix: str = "s") -> EventNFA:
    order = sorted(E.initial, key=repr) + sorted(set(E.states) - E.initial, key=repr)
    name = {s: f"{prefix}{i}" for i, s in enumerate(order)}
    trans = {(name[p], a): {name[q] for q in qs} for (p, a), qs in E.trans.items()}
    return EventNFA(E.level, E.alphabet, tuple(name[s] for s in order),
                    {name[s] for s in E.initial}, trans, {name[s] for s in E.finals})


# absorption and track erasure

_TAIL = "T"


def _normalizing_edges(E: EventNFA, out_map):
    """Product of E with a guess-the-future absorption filter.

    The guess ``m`` is the largest digit level still to come in the current
    gap (-1: none).  A digit is kept iff no later digit of its gap is
    larger, which makes the output the canonical form of the gap's
    ordinal sum.  Mode ``T`` swallows the digits after the last letter.
    Returns (edges, initial, finals); an edge is (src, output or None, dst).
    """
    n = E.level
    guesses = list(range(-1, n)) + [_TAIL]
    edges = []
    states = set()
    for (e, sym), targets in E.trans.items():
        out = out_map(sym)
        for m in guesses:
            for e2 in targets:
                if is_digit(out):
                    k = out.k
                    if m == _TAIL:
                        moves = [((e2, _TAIL), None)]
                    elif m == -1 or k > m:
                        moves = []
                    elif k < m:
                        moves = [((e2, m), None)]
                    else:
                        moves = [((e2, m2), out) for m2 in range(-1, k + 1)]
                else:
                    moves = [((e2, m2), out) for m2 in guesses] if m == -1 else []
                for dst, o in moves:
                    edges.append(((e, m), o, dst))
    initial = {(e, m) for e in E.initial for m in guesses}
    finals = {(e, m) for e in E.finals for m in (-1, _TAIL)}
    return edges, initial, finals


def _from_epsilon_edges(level, alphabet, edges, initial, finals) -> EventNFA:
    eps = defaultdict(set)
    real = defaultdict(set)
    nodes = set(initial) | set(finals)
    for p, o, q in edges:
        nodes.update((p, q))
        (eps[p] if o is None else real[p, o]).add(q)

    closure = {}

    def close(p):
        if p not in closure:
            seen = {p}
            todo = [p]
            while todo:
                x = todo.pop()
                for y in eps.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            closure[p] = frozenset(seen)
        return closure[p]

    trans = defaultdict(set)
    by_src = defaultdict(list)
    for (p, o), qs in real.items():
        by_src[p].append((o, qs))
    for p in nodes:
        for x in close(p):
            for o, qs in by_src.get(x, ()):
                trans[p, o] |= qs
    new_finals = {p for p in nodes if not close(p).isdisjoint(finals)}
    return trim(EventNFA(level, alphabet, tuple(nodes), initial, trans, new_finals))


def normalize(E: EventNFA) -> EventNFA:
    """Canonical forms of the words of E, gaps valued by ordinal sum."""
    edges, init, fin = _normalizing_edges(E, lambda s: s)
    return _from_epsilon_edges(E.level, E.alphabet, edges, init, fin)


def _eraser(track):
    def out_map(sym):
        if is_digit(sym):
            return sym
        if not isinstance(sym, tuple) or not 0 <= track < len(sym):
            raise IndexError(f"track {track} out of range for letter {letter_str(sym)}")
        t = sym[:track] + (BLANK,) + sym[track + 1:]
        return Digit(0) if is_blank(t) else t

    return out_map


def erase_track(E: EventNFA, track: int) -> EventNFA:
    """Blank out one track; an erased event still occupies one position."""
    edges, init, fin = _normalizing_edges(E, _eraser(track))
    return _from_epsilon_edges(E.level, E.alphabet, edges, init, fin)


def infinite_fibers(E: EventNFA, track: int) -> EventNFA:
    """Words v such that infinitely many words of E erase (on `track`) to v.

    For fixed output only paths through an input-consuming cycle with
    empty output can be pumped, so the result is the output language of
    accepting paths of the useful part of the transduction that visit
    such a cycle.
    """
    from .oracle import _sccs

    # only canonical words count as preimages
    E = intersect(E, canonical_domain(E.level, E.alphabet))
    edges, init, fin = _normalizing_edges(E, _eraser(track))
    fwd = defaultdict(list)
    back = defaultdict(list)
    for p, o, q in edges:
        fwd[p].append((o, q))
        back[q].append((o, p))
    useful = _reach(init, fwd) & _reach(fin, back)
    eps = defaultdict(set)
    nodes = set()
    for p, o, q in edges:
        if o is None and p in useful and q in useful:
            eps[p].add(q)
            nodes.update((p, q))
    marked = set()
    for comp in _sccs(sorted(nodes, key=repr), eps):
        if len(comp) > 1 or any(p in eps[p] for p in comp):
            marked |= comp
    flagged = [
        ((p, f), o, (q, f or q in marked))
        for p, o, q in edges
        if p in useful and q in useful
        for f in (False, True)
    ]
    start = {(p, p in marked) for p in init if p in useful}
    finals = {(p, True) for p in fin if p in useful}
    return _from_epsilon_edges(E.level, E.alphabet, flagged, start, finals)


def blank_tracks(n: int, base_alphabet, arity: int, tracks) -> EventNFA:
    """Canonical words of arity-track letters whose given tracks are blank."""
    letters = tuple_alphabet(base_alphabet, arity)
    allowed = {a for a in letters if all(a[i] == BLANK for i in tracks)}
    trans = {}
    dom = canonical_domain(n, letters)
    for (p, a), qs in dom.trans.items():
        if is_digit(a) or a in allowed:
            trans[p, a] = qs
    return EventNFA(n, letters, dom.states, dom.initial, trans, dom.finals)


def gap_value(digits) -> OrdinalCNF:
    """Ordinal sum of a digit string (d_k counts omega^k), as a level-1 CNF."""
    out = OrdinalCNF.zero(1)
    for d in digits:
        out = cnf_add(out, OrdinalCNF.omega_power((d.k,)))
    return out
