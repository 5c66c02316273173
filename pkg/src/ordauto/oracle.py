"""Naive reference semantics for small ordinal automata.

Walks the word's own block structure recursively (a block of length
omega^k is an omega-sequence of blocks of length omega^(k-1)) and decides
which cofinal sets a tail of blank blocks can produce by trying every
subset of states.  Exponential in the number of states; meant for
cross-checking the summary-based evaluator, not for real use.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

from .automaton import OrdinalAutomaton
from .words import BLANK, FiniteOrdinalWord


def _sccs(nodes, edges):
    """Tarjan; edges: dict node -> iterable of successors."""
    index, low, on, stack, out = {}, {}, set(), [], []
    counter = itertools.count()

    def visit(v):
        index[v] = low[v] = next(counter)
        stack.append(v)
        on.add(v)
        for w in edges.get(v, ()):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = set()
            while True:
                w = stack.pop()
                on.discard(w)
                comp.add(w)
                if w == v:
                    break
            out.append(frozenset(comp))

    for v in nodes:
        if v not in index:
            visit(v)
    return out


def recurrent_sets(triples, states):
    """{r: [U, ...]}: U is a union of occurrences of a strongly connected edge set through r.

    For each candidate U, keep only edges whose occurrences lie inside U;
    the largest strongly connected edge set through r is then all edges
    inside r's component, and U is realizable iff that set covers U.
    """
    out = defaultdict(list)
    for size in range(1, len(states) + 1):
        for U in map(frozenset, itertools.combinations(states, size)):
            allowed = [(p, o, q) for p, o, q in triples if o <= U]
            succ = defaultdict(set)
            for p, _, q in allowed:
                succ[p].add(q)
            for comp in _sccs(list(U), succ):
                inner = [o for p, o, q in allowed if p in comp and q in comp]
                if inner and frozenset().union(*inner) == U:
                    for r in comp:
                        out[r].append(U)
    return out


class NaiveRunner:
    def __init__(self, A: OrdinalAutomaton):
        self.A = A
        self.states = list(A.states)
        self._block = lru_cache(maxsize=None)(self._block_uncached)

    def accepts(self, w: FiniteOrdinalWord) -> bool:
        content = tuple(sorted(w.support.items()))
        return any(
            p == self.A.initial and q in self.A.finals
            for p, _, q in self._block(w.level, content)
        )

    def _block_uncached(self, k, content):
        """Triples (entry, occurring states, exit) for one block of length omega^k."""
        A = self.A
        if k == 0:
            letter = content[0][1] if content else BLANK
            return frozenset((p, frozenset((p,)), q) for p, a, q in A.steps if a == letter)
        groups = defaultdict(list)
        for pos, letter in content:
            groups[pos[0]].append((pos[1:], letter))
        last = max(groups) if groups else -1
        # finite part: sub-blocks 0..last, chained
        paths = {(p, p, frozenset()) for p in self.states}
        for i in range(last + 1):
            sub = self._block(k - 1, tuple(groups.get(i, ())))
            by_entry = defaultdict(list)
            for p, o, q in sub:
                by_entry[p].append((o, q))
            paths = {(start, q, o | o2) for start, x, o in paths for o2, q in by_entry[x]}
        # tail: omega many empty sub-blocks
        blank = self._block(k - 1, ())
        rec = self._recurrent(k - 1)
        succ = defaultdict(set)
        for p, o, q in blank:
            succ[p].add((o, q))
        out = set()
        for start, x, o in paths:
            seen = {(x, frozenset())}
            stack = [(x, frozenset())]
            while stack:
                y, acc = stack.pop()
                for U in rec.get(y, ()):
                    for q in A.limit_targets(U):
                        out.add((start, o | acc | U, q))
                for o2, z in succ[y]:
                    item = (z, acc | o2)
                    if item not in seen:
                        seen.add(item)
                        stack.append(item)
        return frozenset(out)

    @lru_cache(maxsize=None)
    def _recurrent(self, k):
        return recurrent_sets(self._block(k, ()), self.states)


def naive_accepts(A: OrdinalAutomaton, w: FiniteOrdinalWord) -> bool:
    return NaiveRunner(A).accepts(w)
