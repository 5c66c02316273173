"""Countability of omega-languages of deterministic level-1 automata.

Read as a deterministic Muller automaton (a run is accepting iff some limit
target of its cofinal set is final), the language is uncountable iff some
reachable accepting cofinal set admits two different ways around it.
Otherwise every accepting cofinal set is a simple cycle and the language
is a finite union of ``U . v^omega``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .automaton import AutomatonError, ExplicitLimits, OrdinalAutomaton
from .events import EventNFA
from .words import BLANK, letter_str


class NondeterministicInput(AutomatonError):
    pass


@dataclass
class Witness:
    state: object
    prefix: tuple
    cycles: tuple
    accepting_set: frozenset


@dataclass
class CountabilityResult:
    countable: bool
    decomposition: list = field(default_factory=list)  # [(EventNFA U, tuple v)]
    witness: Witness | None = None

    @property
    def verdict(self) -> str:
        return "COUNTABLE" if self.countable else "UNCOUNTABLE"


def omega_letters(A: OrdinalAutomaton) -> list:
    letters = sorted(A.alphabet, key=letter_str)
    if any(a == BLANK for _, a, _ in A.steps):
        letters.append(BLANK)
    return letters


def _delta(A):
    delta = {}
    for p, a, q in A.steps:
        if (p, a) in delta and delta[p, a] != q:
            raise NondeterministicInput(
                f"state {p!r} has several successors on {letter_str(a)}; determinize first"
            )
        delta[p, a] = q
    return delta


def _reachable(A, delta):
    seen = {A.initial}
    todo = [A.initial]
    while todo:
        p = todo.pop()
        for (x, _), q in delta.items():
            if x == p and q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def _candidate_sets(A, reach, guard=16):
    if isinstance(A.limits, ExplicitLimits):
        return [S for S in A.limits.table if S <= reach]
    if len(reach) > guard:
        raise AutomatonError("rule-based limit table too large to enumerate")
    states = sorted(reach, key=repr)
    return [frozenset(c) for k in range(1, len(states) + 1) for c in itertools.combinations(states, k)]


def _strongly_connected(S, edges):
    start = next(iter(S))
    for graph in (edges, {q: [(a, p) for p in S for a, x in edges.get(p, ()) if x == q] for q in S}):
        seen = {start}
        todo = [start]
        while todo:
            p = todo.pop()
            for _, q in graph.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        if seen != S:
            return False
    return True


def _path(edges, src, dst):
    """Shortest non-empty-or-empty word from src to dst along `edges`."""
    prev = {src: None}
    todo = deque([src])
    while todo:
        p = todo.popleft()
        if p == dst:
            break
        for a, q in sorted(edges.get(p, ()), key=lambda e: letter_str(e[0])):
            if q not in prev:
                prev[q] = (p, a)
                todo.append(q)
    out = []
    p = dst
    while prev[p] is not None:
        p, a = prev[p]
        out.append(a)
    return tuple(reversed(out))


def _tour(edges, start, end, S):
    """Word from start to end visiting every state of S."""
    word, here, todo = [], start, set(S) - {start}
    while todo:
        target = min(todo, key=lambda s: (len(_path(edges, here, s)), repr(s)))
        piece = _path(edges, here, target)
        for a in piece:
            here = dict((b, q) for b, q in edges[here])[a]
            todo.discard(here)
        word.extend(piece)
    word.extend(_path(edges, here, end))
    return tuple(word)


def countability_level1(A: OrdinalAutomaton) -> CountabilityResult:
    if A.level != 1:
        raise AutomatonError("countability analysis is implemented for level-1 automata only")
    delta = _delta(A)
    reach = _reachable(A, delta)
    all_edges = defaultdict(list)
    for (p, a), q in delta.items():
        all_edges[p].append((a, q))
    decomposition = []
    for S in sorted(_candidate_sets(A, reach), key=lambda s: (len(s), sorted(map(repr, s)))):
        if A.limits.targets(A.limits.image(S)).isdisjoint(A.finals):
            continue
        inner = {p: [(a, q) for a, q in all_edges.get(p, ()) if q in S] for p in S}
        if not _strongly_connected(S, inner):
            continue
        branching = [p for p in sorted(S, key=repr) if len(inner[p]) > 1]
        if branching:
            q = branching[0]
            cycles = tuple((a,) + _tour(inner, q2, q, S) for a, q2 in sorted(inner[q], key=lambda e: letter_str(e[0]))[:2])
            return CountabilityResult(
                False, witness=Witness(q, _path(all_edges, A.initial, q), cycles, S)
            )
        q = min(S, key=repr)
        (a, nxt), = inner[q]
        cycle = (a,) + _path(inner, nxt, q)
        decomposition.append((prefix_automaton(A, delta, q), cycle))
    return CountabilityResult(True, decomposition=decomposition)


def prefix_automaton(A, delta, target) -> EventNFA:
    """Finite words leading from the initial state to `target`."""
    trans = {(p, a): {q} for (p, a), q in delta.items()}
    return EventNFA(0, frozenset(a for _, a in delta), A.states, {A.initial}, trans, {target})


# membership of ultimately periodic words u v^omega

def omega_accepts(A: OrdinalAutomaton, u, v) -> bool:
    delta = _delta(A)
    p = A.initial
    for a in u:
        p = delta.get((p, a))
        if p is None:
            return False
    seen = {}
    boundary = []
    while p not in seen:
        seen[p] = len(boundary)
        boundary.append(p)
        for a in v:
            p = delta.get((p, a))
            if p is None:
                return False
    inf = set()
    for q in boundary[seen[p]:]:
        for a in v:
            inf.add(q)
            q = delta[q, a]
    return not A.limit_targets(inf).isdisjoint(A.finals)


def _letter_at(u, v, i):
    return u[i] if i < len(u) else v[(i - len(u)) % len(v)]


def decomposition_accepts(decomposition, u, v) -> bool:
    u, v = tuple(u), tuple(v)
    for U, cyc in decomposition:
        horizon = len(u) + (len(U.states) + 2) * len(v) * len(cyc) + len(cyc)
        check = len(u) + 2 * len(v) * len(cyc)
        for k in range(horizon + 1):
            if all(_letter_at(u, v, k + i) == cyc[i % len(cyc)] for i in range(check)):
                if U.accepts(tuple(_letter_at(u, v, i) for i in range(k))):
                    return True
    return False


def check_witness(A: OrdinalAutomaton, w: Witness) -> bool:
    """Both cycles return to the state, differ in their first letter, and every
    interleaving is accepted."""
    v1, v2 = w.cycles
    if not v1 or not v2 or v1[0] == v2[0]:
        return False
    delta = _delta(A)

    def run(p, word):
        for a in word:
            p = delta.get((p, a))
            if p is None:
                return None
        return p

    if run(A.initial, w.prefix) != w.state:
        return False
    if run(w.state, v1) != w.state or run(w.state, v2) != w.state:
        return False
    return all(omega_accepts(A, w.prefix, c) for c in (v1, v2, v1 + v2, v1 + v1 + v2))
