"""Ordinal Buchi automata on finite omega^n-words.

A run reads letters at successor steps and, at a limit position, moves to a
state allowed by the limit relation for the set of states occurring
cofinally below it.  On a finite-support word every limit is approached
through a blank segment, so runs are computed from per-level summaries of
how the automaton can cross ``blank^(omega^k)``.

Limit relations are given by a :class:`LimitRule`.  A rule maps each state
to a set of *atoms* (its feature) and answers limit lookups from the union
of features of the cofinal states.  Plain automata use each state as its
own atom, so occurrence sets are literally sets of states; product
constructions use tagged atoms so that their limit relation never has to
be written out subset by subset.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .ordinals import LevelMismatch, OrdinalCNF
from .words import (
    BLANK,
    FiniteOrdinalWord,
    event_decomposition,
    gap_digits,
    is_blank,
    letter_str,
)

EMPTY = frozenset()
MAX_STATES = 5000


class AutomatonError(ValueError):
    pass


class SizeGuardError(AutomatonError):
    pass


# limit rules

class LimitRule:
    def feature(self, state) -> frozenset:
        raise NotImplementedError

    def targets(self, image: frozenset) -> frozenset:
        raise NotImplementedError

    def coarsen(self, image: frozenset, level: int) -> frozenset:
        """Forget the part of a level-`level` block image no later limit reads."""
        return image

    def image(self, states: Iterable) -> frozenset:
        out = set()
        for s in states:
            out |= self.feature(s)
        return frozenset(out)


class ExplicitLimits(LimitRule):
    """A literal table from state sets to target states."""

    def __init__(self, pairs: Iterable = ()):
        table = defaultdict(set)
        for src, q in pairs:
            src = frozenset(src)
            if not src:
                raise AutomatonError("limit transitions need a non-empty source set")
            table[src].add(q)
        self.table = {k: frozenset(v) for k, v in table.items()}

    def feature(self, state):
        return frozenset((state,))

    def targets(self, image):
        return self.table.get(image, EMPTY)

    def pairs(self):
        for src, qs in self.table.items():
            for q in qs:
                yield src, q


class RuleLimits(LimitRule):
    def __init__(self, feature: Callable, targets: Callable, coarsen: Callable | None = None):
        self._feature = feature
        self._targets = targets
        self._coarsen = coarsen

    def coarsen(self, image, level):
        return image if self._coarsen is None else self._coarsen(image, level)

    def feature(self, state):
        return self._feature(state)

    def targets(self, image):
        return frozenset(self._targets(image))


def _split_tagged(image, tags):
    parts = {t: set() for t in tags}
    for atom in image:
        parts[atom[0]].add(atom[1])
    return {t: frozenset(v) for t, v in parts.items()}


@dataclass(eq=False)
class OrdinalAutomaton:
    level: int
    alphabet: frozenset
    states: tuple
    initial: object
    steps: frozenset
    finals: frozenset
    limits: LimitRule = field(default_factory=ExplicitLimits)

    def __post_init__(self):
        if self.level < 0:
            raise AutomatonError("level must be >= 0")
        self.alphabet = frozenset(self.alphabet)
        if BLANK in self.alphabet:
            raise AutomatonError("the blank is implicit and may not be declared")
        self.states = tuple(dict.fromkeys(self.states))
        self.steps = frozenset((p, BLANK if is_blank(a) else a, q) for p, a, q in self.steps)
        self.finals = frozenset(self.finals)
        known = set(self.states)
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} undeclared")
        if not self.finals <= known:
            raise AutomatonError(f"final states {sorted(map(str, self.finals - known))} undeclared")
        for p, a, q in self.steps:
            if p not in known or q not in known:
                raise AutomatonError(f"step ({p!r}, {letter_str(a)}, {q!r}) uses undeclared states")
            if a != BLANK and a not in self.alphabet:
                raise AutomatonError(f"step letter {letter_str(a)} not in alphabet")
        if isinstance(self.limits, ExplicitLimits):
            for src, q in self.limits.pairs():
                if not src <= known or q not in known:
                    raise AutomatonError("limit transition uses undeclared states")
        self._cache = {}

    @classmethod
    def explicit(cls, level, alphabet, states, initial, steps, finals, limits=()):
        return cls(level, frozenset(alphabet), tuple(states), initial, frozenset(steps),
                   frozenset(finals), ExplicitLimits(limits))

    def limit_targets(self, states) -> frozenset:
        return self.limits.targets(self.limits.image(states))

    @property
    def step_index(self) -> dict:
        idx = self._cache.get("steps")
        if idx is None:
            tmp = defaultdict(set)
            for p, a, q in self.steps:
                tmp[p, a].add(q)
            idx = {k: frozenset(v) for k, v in tmp.items()}
            self._cache["steps"] = idx
        return idx

    def successors(self, p, letter) -> frozenset:
        return self.step_index.get((p, letter), EMPTY)


# block summaries

@dataclass(frozen=True)
class BlockSummaryTable:
    """levels[k]: triples (entry, occurrence image, exit) for blank^(omega^k)."""

    states: tuple
    levels: tuple

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def relation(self, k: int) -> dict:
        rel = defaultdict(set)
        for p, _, q in self.levels[k]:
            rel[p].add(q)
        return {p: frozenset(v) for p, v in rel.items()}


def _closed_walk_images(succ, r):
    found = set()
    seen = {(r, EMPTY)}
    stack = [(r, EMPTY)]
    while stack:
        x, acc = stack.pop()
        for occ, q in succ.get(x, ()):
            acc2 = acc | occ
            if q == r:
                found.add(acc2)
            if (q, acc2) not in seen:
                seen.add((q, acc2))
                stack.append((q, acc2))
    return found


def _reachable_with_images(succ, p):
    seen = {(p, EMPTY)}
    stack = [(p, EMPTY)]
    while stack:
        x, acc = stack.pop()
        for occ, q in succ.get(x, ()):
            item = (q, acc | occ)
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return seen


def omega_iterate(triples, states, targets: Callable, loop_log=None) -> frozenset:
    """Summaries of an omega-sequence of blocks, each summarized by `triples`.

    The state after the sequence is a limit target of the union of
    occurrences of the blocks used infinitely often; those blocks form a
    closed walk, so it is enough to know which unions closed walks through
    a node can produce.
    """
    succ = defaultdict(list)
    for p, occ, q in triples:
        succ[p].append((occ, q))
    loops = {}
    tcache = {}
    out = set()
    for p in states:
        if p not in succ:
            continue
        for r, pre in _reachable_with_images(succ, p):
            if r not in loops:
                loops[r] = _closed_walk_images(succ, r)
            for loop in loops[r]:
                if loop not in tcache:
                    tcache[loop] = targets(loop)
                    if loop_log is not None:
                        loop_log[loop] = tcache[loop]
                for q in tcache[loop]:
                    out.add((p, pre | loop, q))
    return frozenset(out)


def _step_closure(A, seeds, reach):
    adj = A._cache.get("adjacency")
    if adj is None:
        adj = defaultdict(set)
        for p, _, q in A.steps:
            adj[p].add(q)
        A._cache["adjacency"] = adj
    todo = [s for s in seeds if s not in reach]
    reach.update(todo)
    while todo:
        p = todo.pop()
        for q in adj.get(p, ()):
            if q not in reach:
                reach.add(q)
                todo.append(q)


def build_summaries(A: OrdinalAutomaton, max_states: int = MAX_STATES) -> BlockSummaryTable:
    """Summaries for every state reachable from the initial state.

    Reachability is closed under successor steps and under the exits of
    blank-block summaries (limit steps), computed together to a fixpoint.
    """
    cached = A._cache.get("summaries")
    if cached is not None:
        return cached
    feat = A.limits.feature
    blank = defaultdict(list)
    for p, a, q in A.steps:
        if a == BLANK:
            blank[p].append(q)
    reach = set()
    _step_closure(A, [A.initial], reach)
    while True:
        if len(reach) > max_states:
            raise SizeGuardError(f"more than {max_states} reachable states (summary size guard)")
        order = [s for s in A.states if s in reach]
        coarsen = A.limits.coarsen
        level0 = frozenset((p, coarsen(feat(p), 0), q) for p in order for q in blank.get(p, ()))
        levels = [level0]
        for k in range(1, A.level + 1):
            nxt = omega_iterate(levels[-1], order, A.limits.targets)
            levels.append(frozenset((p, coarsen(o, k), q) for p, o, q in nxt))
        exits = {q for lv in levels for _, _, q in lv} - reach
        if not exits:
            break
        _step_closure(A, exits, reach)
    table = BlockSummaryTable(tuple(order), tuple(levels))
    A._cache["summaries"] = table
    return table


def reachable_states(A: OrdinalAutomaton) -> tuple:
    return build_summaries(A).states


def compose(r1, r2) -> frozenset:
    by_entry = defaultdict(list)
    for p, occ, q in r2:
        by_entry[p].append((occ, q))
    return frozenset((p, o1 | o2, q) for p, o1, r in r1 for o2, q in by_entry.get(r, ()))


def gap_summary(T: BlockSummaryTable, gap: OrdinalCNF) -> frozenset:
    """Triples for crossing a blank segment of length `gap` (< omega^n)."""
    if gap.level != 1:
        raise LevelMismatch("gaps are level-1 ordinals")
    out = frozenset((p, EMPTY, p) for p in T.states)
    for k in gap_digits(gap):
        if k >= len(T.levels) - 1:
            raise AutomatonError(f"gap {gap} is not below omega^{T.n}")
        out = compose(out, T.levels[k])
    return out


class _Runner:
    def __init__(self, A: OrdinalAutomaton):
        T = build_summaries(A)
        self.A = A
        self.rel = [T.relation(k) for k in range(A.level + 1)]
        self.accepting_entries = frozenset(p for p, _, f in T.levels[A.level] if f in A.finals)

    def apply(self, current, k):
        rel = self.rel[k]
        out = set()
        for p in current:
            out |= rel.get(p, EMPTY)
        return out

    def step(self, current, letter):
        idx = self.A.step_index
        out = set()
        for p in current:
            out |= idx.get((p, letter), EMPTY)
        return out


def _runner(A) -> _Runner:
    r = A._cache.get("runner")
    if r is None:
        r = A._cache["runner"] = _Runner(A)
    return r


def check_word(A: OrdinalAutomaton, w: FiniteOrdinalWord):
    if w.level != A.level:
        raise LevelMismatch(f"word level {w.level} vs automaton level {A.level}")
    bad = w.letters() - A.alphabet
    if bad:
        raise AutomatonError(f"letters {sorted(map(letter_str, bad))} not in the automaton alphabet")


def run_accepts(A: OrdinalAutomaton, w: FiniteOrdinalWord) -> bool:
    check_word(A, w)
    run = _runner(A)
    current = {A.initial}
    for gap, letter in event_decomposition(w).events:
        for k in gap_digits(gap):
            current = run.apply(current, k)
        current = run.step(current, letter)
        if not current:
            return False
    return not current.isdisjoint(run.accepting_entries)


# constructions

def _same_signature(A, B):
    if A.level != B.level:
        raise LevelMismatch(f"levels {A.level} and {B.level} differ")
    if A.alphabet != B.alphabet:
        raise AutomatonError("alphabets differ")


def intersection(A: OrdinalAutomaton, B: OrdinalAutomaton) -> OrdinalAutomaton:
    _same_signature(A, B)
    states = [(p, q) for p in A.states for q in B.states]
    by_letter = defaultdict(list)
    for q, b, q2 in B.steps:
        by_letter[q, b].append(q2)
    steps = {((p, q), a, (p2, q2)) for p, a, p2 in A.steps for q in B.states for q2 in by_letter.get((q, a), ())}
    la, lb = A.limits, B.limits

    def feature(s):
        return frozenset(("L", x) for x in la.feature(s[0])) | frozenset(("R", y) for y in lb.feature(s[1]))

    def targets(img):
        parts = _split_tagged(img, "LR")
        if not parts["L"] or not parts["R"]:
            return ()
        return {(p, q) for p in la.targets(parts["L"]) for q in lb.targets(parts["R"])}

    def coarsen(img, level):
        parts = _split_tagged(img, "LR")
        return (frozenset(("L", x) for x in la.coarsen(parts["L"], level))
                | frozenset(("R", y) for y in lb.coarsen(parts["R"], level)))

    finals = {(p, q) for p in A.finals for q in B.finals}
    return OrdinalAutomaton(A.level, A.alphabet, tuple(states), (A.initial, B.initial),
                            frozenset(steps), frozenset(finals), RuleLimits(feature, targets, coarsen))


def union(A: OrdinalAutomaton, B: OrdinalAutomaton) -> OrdinalAutomaton:
    _same_signature(A, B)
    init = ("init",)
    states = [init] + [("L", p) for p in A.states] + [("R", q) for q in B.states]
    steps = {(("L", p), a, ("L", q)) for p, a, q in A.steps}
    steps |= {(("R", p), a, ("R", q)) for p, a, q in B.steps}
    steps |= {(init, a, ("L", q)) for p, a, q in A.steps if p == A.initial}
    steps |= {(init, a, ("R", q)) for p, a, q in B.steps if p == B.initial}
    rules = {"L": A.limits, "R": B.limits}

    def feature(s):
        if s == init:
            return frozenset((("I", None),))
        return frozenset((s[0], x) for x in rules[s[0]].feature(s[1]))

    def targets(img):
        sides = {a[0] for a in img}
        if len(sides) != 1 or "I" in sides:
            return ()
        (side,) = sides
        return {(side, q) for q in rules[side].targets(frozenset(a[1] for a in img))}

    def coarsen(img, level):
        parts = _split_tagged(img, "ILR")
        out = {("I", None)} if parts["I"] else set()
        for side in "LR":
            out.update((side, x) for x in rules[side].coarsen(parts[side], level))
        return frozenset(out)

    finals = {("L", p) for p in A.finals} | {("R", q) for q in B.finals}
    return OrdinalAutomaton(A.level, A.alphabet, tuple(states), init, frozenset(steps),
                            frozenset(finals), RuleLimits(feature, targets, coarsen))


def map_letters(A: OrdinalAutomaton, phi: Callable, alphabet) -> OrdinalAutomaton:
    """Replace each step on `a` by steps on every letter of ``phi(a)``.

    `phi` is also applied to the blank; its images may contain the blank.
    Limit behaviour is shared with `A`.
    """
    steps = set()
    for p, a, q in A.steps:
        for b in phi(a):
            steps.add((p, BLANK if is_blank(b) else b, q))
    return OrdinalAutomaton(A.level, frozenset(alphabet), A.states, A.initial,
                            frozenset(steps), A.finals, A.limits)


def relabel(A: OrdinalAutomaton, subst: Mapping) -> OrdinalAutomaton:
    """Letter substitution Gamma -> P(X); blank steps are kept as they are."""
    missing = A.alphabet - set(subst)
    if missing:
        raise AutomatonError(f"substitution undefined on {sorted(map(letter_str, missing))}")
    alphabet = set().union(*map(set, subst.values())) if subst else set()
    return map_letters(A, lambda a: (BLANK,) if a == BLANK else subst[a], alphabet)


def tuple_alphabet(alphabet, arity: int) -> frozenset:
    """Non-blank letters of the arity-fold convolution of `alphabet`."""
    base = sorted(alphabet, key=letter_str) + [BLANK]
    return frozenset(t for t in itertools.product(base, repeat=arity) if not is_blank(t))


def cylindrify(A: OrdinalAutomaton, tracks: tuple, arity: int, base_alphabet) -> OrdinalAutomaton:
    """Run `A` on the given tracks of an `arity`-track convolution, ignoring the rest.

    ``tracks[i]`` is the track read as component i of A's letters (a 1-track
    automaton reads plain letters).
    """
    full = tuple_alphabet(base_alphabet, arity)
    proj = defaultdict(set)
    for t in list(full) + [BLANK]:
        tt = (BLANK,) * arity if t == BLANK else t
        comp = tuple(tt[i] for i in tracks)
        key = comp[0] if len(tracks) == 1 and not _is_tuple_automaton(A) else comp
        proj[BLANK if is_blank(key) else key].add(t)
    return map_letters(A, lambda a: proj.get(a, ()), full)


def _is_tuple_automaton(A) -> bool:
    return any(isinstance(a, tuple) for a in A.alphabet)


def universal(level: int, alphabet) -> OrdinalAutomaton:
    q = "all"
    steps = {(q, a, q) for a in set(alphabet) | {BLANK}}
    return OrdinalAutomaton.explicit(level, alphabet, [q], q, steps, [q], [({q}, q)])


def empty_language(level: int, alphabet) -> OrdinalAutomaton:
    return OrdinalAutomaton.explicit(level, alphabet, ["none"], "none", (), ())


def single_word(w: FiniteOrdinalWord, alphabet=None) -> OrdinalAutomaton:
    """Deterministic automaton accepting exactly `w` among all omega^n-words.

    Every state carries the rank of the limit that produced it (0 after a
    successor step).  The rank of a limit is one more than the largest rank
    occurring cofinally below it, which lets the automaton count blank gaps
    exactly.
    """
    n = w.level
    alphabet = frozenset(alphabet if alphabet is not None else w.letters())
    events = [(gap_digits(g), a) for g, a in event_decomposition(w).events]
    m = len(events)
    states = [("tail", t) for t in range(n)] + [("end",)]
    steps = set()
    for e, (digs, letter) in enumerate(events):
        for j in range(len(digs) + 1):
            for t in range(n):
                src = ("w", e, j, t)
                states.append(src)
                if j < len(digs):
                    dst = ("w", e, j + 1, 0) if digs[j] == 0 else ("w", e, j, 0)
                    steps.add((src, BLANK, dst))
                else:
                    dst = ("w", e + 1, 0, 0) if e + 1 < m else ("tail", 0)
                    steps.add((src, letter, dst))
    for t in range(n):
        steps.add((("tail", t), BLANK, ("tail", 0)))
    initial = ("w", 0, 0, 0) if m else ("tail", 0)

    def feature(s):
        if s[0] == "end":
            return frozenset((("end", None),))
        return frozenset((("tag", s[-1]), ("at", s[:-1])))

    def targets(img):
        parts = _split_tagged(img, ("tag", "at", "end"))
        if parts["end"] or len(parts["at"]) != 1:
            return ()
        rank = max(parts["tag"]) + 1
        (at,) = parts["at"]
        if at[0] == "tail":
            return {("end",)} if rank == n else {("tail", rank)}
        _, e, j = at
        digs = events[e][0]
        if j < len(digs) and digs[j] == rank:
            return {("w", e, j + 1, rank)}
        if j < len(digs) and rank < digs[j]:
            return {("w", e, j, rank)}
        return ()

    return OrdinalAutomaton(n, alphabet, tuple(states), initial, frozenset(steps),
                            frozenset({("end",)}), RuleLimits(feature, targets))


def substitute(R: OrdinalAutomaton, subs: Mapping) -> OrdinalAutomaton:
    """omega^n-language from a level-1 language over Gamma by block substitution.

    Block i (of length omega^(n-1)) is read by ``subs[a_i]`` while R reads
    ``a_i``.  A key of `subs` may be the blank, standing for R's blank
    letter; letters of R without an entry have an empty language.  States
    carry limit ranks as in :func:`single_word` so that block boundaries
    (rank n-1) are told apart from limits inside a block.
    """
    if R.level != 1:
        raise LevelMismatch("the outer automaton must have level 1")
    if not subs:
        raise AutomatonError("substitution map is empty")
    levels = {S.level for S in subs.values()}
    alphabets = {S.alphabet for S in subs.values()}
    if len(levels) != 1 or len(alphabets) != 1:
        raise LevelMismatch("all substituted automata must share level and alphabet")
    (sub_level,) = levels
    if sub_level < 1:
        raise LevelMismatch("substituted automata must have level >= 1")
    n = sub_level + 1
    (alphabet,) = alphabets
    keys = sorted(subs, key=letter_str)
    for a in keys:
        if a != BLANK and a not in R.alphabet:
            raise AutomatonError(f"substitution letter {letter_str(a)} unknown to the outer automaton")
    init = ("init",)
    states = [init] + [("fin", f) for f in R.states]
    steps = set()
    for r in R.states:
        for a in keys:
            S = subs[a]
            for s in S.states:
                for t in range(n):
                    states.append((r, a, s, t))
            for s, x, s2 in S.steps:
                for t in range(n):
                    steps.add(((r, a, s, t), x, (r, a, s2, 0)))
    for a in keys:
        S = subs[a]
        for s, x, s2 in S.steps:
            if s == S.initial:
                steps.add((init, x, (R.initial, a, s2, 0)))

    def feature(s):
        if s == init:
            return frozenset((("init", None),))
        if s[0] == "fin":
            return frozenset((("fin", s[1]),))
        r, a, x, t = s
        out = {("tag", t), ("blk", (r, a))}
        out.update(("R", y) for y in R.limits.feature(r))
        out.update(("S", (a, y)) for y in subs[a].limits.feature(x))
        return frozenset(out)

    def targets(img):
        parts = _split_tagged(img, ("init", "fin", "tag", "blk", "R", "S"))
        if parts["init"] or parts["fin"]:
            return ()
        rank = max(parts["tag"]) + 1
        if rank == n:
            return {("fin", f) for f in R.limits.targets(parts["R"])}
        if len(parts["blk"]) != 1:
            return ()
        ((r, a),) = parts["blk"]
        S = subs[a]
        inner = S.limits.targets(frozenset(y for b, y in parts["S"] if b == a))
        if rank < n - 1:
            return {(r, a, s2, rank) for s2 in inner}
        if inner.isdisjoint(S.finals):
            return ()
        return {(r2, a2, subs[a2].initial, rank) for r2 in R.successors(r, a) for a2 in keys}

    def coarsen(img, level):
        # whole blocks: only tags and the outer run matter from here on
        if level < n - 1:
            return img
        return frozenset(a for a in img if a[0] not in ("S", "blk"))

    finals = {("fin", f) for f in R.finals}
    return OrdinalAutomaton(n, alphabet, tuple(states), init, frozenset(steps),
                            frozenset(finals), RuleLimits(feature, targets, coarsen))


def emptiness_finite_support(A: OrdinalAutomaton) -> bool:
    """True iff A accepts no finite-support word."""
    from .events import compile_automaton, nfa_is_empty

    return nfa_is_empty(compile_automaton(A))


def check_disjoint_substitution(subs: Mapping) -> bool:
    keys = sorted(subs, key=letter_str)
    for a, b in itertools.combinations(keys, 2):
        if not emptiness_finite_support(intersection(subs[a], subs[b])):
            return False
    return True


def realizable_limits(A: OrdinalAutomaton, max_states: int = 2000) -> dict:
    """Limit table restricted to cofinal sets that blank segments can produce.

    On finite-support words every limit is approached through a blank
    segment, so this table gives an explicit automaton with the same
    finite-support language.
    """
    if isinstance(A.limits, ExplicitLimits):
        return dict(A.limits.table)
    states = reachable_states(A)
    if len(states) > max_states:
        raise SizeGuardError(
            f"writing out the limit relation of a {len(states)}-state automaton "
            f"exceeds the guard of {max_states} states"
        )
    rule = A.limits
    log = {}
    inside = set(states)
    level = frozenset((p, frozenset((p,)), q) for p, a, q in A.steps if a == BLANK and p in inside)
    for _ in range(A.level):
        level = omega_iterate(level, states, lambda S: rule.targets(rule.image(S)), log)
    return {S: T for S, T in log.items() if T}


def explicit_copy(A: OrdinalAutomaton, **kw) -> OrdinalAutomaton:
    """Equivalent (on finite-support words) explicit automaton on the reachable states."""
    table = realizable_limits(A, **kw)
    pairs = [(S, q) for S, qs in table.items() for q in qs]
    states = reachable_states(A)
    inside = set(states)
    steps = {(p, a, q) for p, a, q in A.steps if p in inside}
    return OrdinalAutomaton.explicit(A.level, A.alphabet, states, A.initial, steps, A.finals & inside, pairs)


def renamed(A: OrdinalAutomaton, prefix: str = "q", **kw) -> OrdinalAutomaton:
    """Explicit copy with states renamed to ``q0, q1, ...`` (initial first)."""
    B = explicit_copy(A, **kw)
    order = [B.initial] + [s for s in B.states if s != B.initial]
    name = {s: f"{prefix}{i}" for i, s in enumerate(order)}
    return OrdinalAutomaton.explicit(
        B.level, B.alphabet, [name[s] for s in order], name[B.initial],
        {(name[p], a, name[q]) for p, a, q in B.steps},
        {name[s] for s in B.finals},
        [({name[s] for s in S}, name[q]) for S, q in B.limits.pairs()],
    )
