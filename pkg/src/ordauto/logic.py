"""First-order queries with cardinality quantifiers over automatic presentations.

Formulas are compiled to event automata over convolutions with one track per
variable (bound variables renamed apart first).  A compiled subformula
accepts exactly the canonical words whose free-variable tracks decode to
domain elements satisfying it, whose tracks for variables bound inside it are
blank, and whose remaining tracks are unconstrained.

Grammar (loosest binding first)::

    formula := implies
    implies := disj ( "->" implies )?
    disj    := conj ( "|" conj )*
    conj    := unary ( "&" unary )*
    unary   := "~" unary | QUANT var "." formula | "(" formula ")"
             | "true" | "false" | name "(" var ("," var)* ")"
             | var "<" var | var "=" var
    QUANT   := "E" | "A" | "Einf" | "Ealeph0" | "Econt"

A quantifier's scope extends as far right as possible.  ``x < y`` and
``x = y`` are shorthand for ``lt(x,y)`` and ``eq(x,y)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable

from . import events as ev
from .automaton import (
    OrdinalAutomaton,
    cylindrify,
    run_accepts,
    single_word,
    tuple_alphabet,
)
from .ordinals import Order, OrdinalCNF, cnf_compare
from .presentations import Presentation, build_order_automaton, pair_alphabet
from .words import BLANK, FiniteOrdinalWord, WordError


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


# syntax

QUANTIFIERS = ("E", "A", "Einf", "Ealeph0", "Econt")


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    sub: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Quant:
    kind: str
    var: str
    body: object


def Implies(a, b):
    return Or(Not(a), b)


_TOKEN = re.compile(r"\s*(->|[()~&|.,<=]|[A-Za-z_][A-Za-z0-9_']*)")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def var(self):
        tok, pos = self.toks[self.i]
        if not re.fullmatch(r"[a-z_][A-Za-z0-9_']*", tok) or tok in ("true", "false"):
            raise FormulaSyntaxError(f"expected a variable, found {tok!r}", pos)
        self.i += 1
        return tok

    def formula(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self):
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = Or(out, self.conj())
        return out

    def conj(self):
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self):
        tok, pos = self.toks[self.i]
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok in QUANTIFIERS:
            self.take()
            v = self.var()
            self.take(".")
            return Quant(tok, v, self.formula())
        if tok == "(":
            self.take()
            out = self.formula()
            self.take(")")
            return out
        if tok in ("true", "false"):
            self.take()
            return Const(tok == "true")
        if tok == "<end>":
            raise FormulaSyntaxError("unexpected end of formula", pos)
        if self.toks[self.i + 1][0] == "(":
            name = self.take()
            self.take("(")
            args = [self.var()]
            while self.peek() == ",":
                self.take()
                args.append(self.var())
            self.take(")")
            return Atom(name, tuple(args))
        x = self.var()
        op = self.peek()
        if op not in ("<", "="):
            raise FormulaSyntaxError(f"expected '<' or '=' after {x!r}", self.toks[self.i][1])
        self.take()
        return Atom("lt" if op == "<" else "eq", (x, self.var()))


def parse_formula(text: str):
    p = _Parser(text)
    out = p.formula()
    if p.peek() != "<end>":
        raise FormulaSyntaxError(f"trailing input {p.peek()!r}", p.toks[p.i][1])
    return out


def format_formula(phi) -> str:
    if isinstance(phi, Atom):
        return f"{phi.rel}({','.join(phi.args)})"
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Not):
        return f"~{format_formula(phi.sub)}"
    if isinstance(phi, And):
        return f"({format_formula(phi.left)} & {format_formula(phi.right)})"
    if isinstance(phi, Or):
        return f"({format_formula(phi.left)} | {format_formula(phi.right)})"
    return f"({phi.kind} {phi.var} . {format_formula(phi.body)})"


def free_vars(phi) -> list:
    """Free variables in order of first occurrence."""
    out = []

    def walk(f, bound):
        if isinstance(f, Atom):
            for a in f.args:
                if a not in bound and a not in out:
                    out.append(a)
        elif isinstance(f, Not):
            walk(f.sub, bound)
        elif isinstance(f, (And, Or)):
            walk(f.left, bound)
            walk(f.right, bound)
        elif isinstance(f, Quant):
            walk(f.body, bound | {f.var})

    walk(phi, frozenset())
    return out


def rename_apart(phi):
    """Give every binder a fresh name (``x#1`` ...) so scopes never overlap."""
    counter = itertools.count(1)

    def go(f, env):
        if isinstance(f, Atom):
            return Atom(f.rel, tuple(env.get(a, a) for a in f.args))
        if isinstance(f, Const):
            return f
        if isinstance(f, Not):
            return Not(go(f.sub, env))
        if isinstance(f, (And, Or)):
            return type(f)(go(f.left, env), go(f.right, env))
        fresh = f"{f.var}#{next(counter)}"
        return Quant(f.kind, fresh, go(f.body, {**env, f.var: fresh}))

    return go(phi, {})


def share_tracks(phi):
    """Rename each binder after its nesting depth (``#1``, ``#2``, ...).

    Binders in sibling scopes then share a name, and so a track.  Inside
    any subformula the binders sit deeper than every variable free there,
    so a name is never both free and bound in the same subformula.
    """
    def go(f, env, depth):
        if isinstance(f, Atom):
            return Atom(f.rel, tuple(env.get(a, a) for a in f.args))
        if isinstance(f, Const):
            return f
        if isinstance(f, Not):
            return Not(go(f.sub, env, depth))
        if isinstance(f, (And, Or)):
            return type(f)(go(f.left, env, depth), go(f.right, env, depth))
        name = f"#{depth + 1}"
        return Quant(f.kind, name, go(f.body, {**env, f.var: name}, depth + 1))

    return go(phi, {}, 0)


def _bound_vars(phi) -> set:
    if isinstance(phi, Quant):
        return {phi.var} | _bound_vars(phi.body)
    if isinstance(phi, Not):
        return _bound_vars(phi.sub)
    if isinstance(phi, (And, Or)):
        return _bound_vars(phi.left) | _bound_vars(phi.right)
    return set()


def quantifier_depth(phi) -> int:
    if isinstance(phi, Quant):
        return 1 + quantifier_depth(phi.body)
    if isinstance(phi, Not):
        return quantifier_depth(phi.sub)
    if isinstance(phi, (And, Or)):
        return max(quantifier_depth(phi.left), quantifier_depth(phi.right))
    return 0


# structures

@dataclass
class Relation:
    arity: int
    automaton: OrdinalAutomaton
    # optional independent semantics for the brute-force engine
    predicate: Callable | None = None


@dataclass(eq=False)
class StructurePresentation:
    level: int
    alphabet: frozenset
    domain: OrdinalAutomaton
    relations: dict = field(default_factory=dict)
    domain_predicate: Callable | None = None
    source: Presentation | None = None
    _compiled: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.alphabet = frozenset(self.alphabet)
        for name, rel in self.relations.items():
            self._check(name, rel)

    def _check(self, name, rel):
        A = rel.automaton
        if A.level != self.level:
            raise FormulaError(f"relation {name}: level {A.level}, structure level {self.level}")
        expected = self.alphabet if rel.arity == 1 else tuple_alphabet(self.alphabet, rel.arity)
        if not A.alphabet <= expected:
            raise FormulaError(f"relation {name}: letters do not match arity {rel.arity}")

    def add_relation(self, name, arity, automaton, predicate=None):
        rel = Relation(arity, automaton, predicate)
        self._check(name, rel)
        self.relations[name] = rel

    def add_constant(self, name: str, word: FiniteOrdinalWord, predicate=None):
        """Unary relation holding of exactly one element."""
        pred = predicate or (lambda x: x == word)
        self.add_relation(name, 1, single_word(word, self.alphabet), pred)

    def in_domain(self, w: FiniteOrdinalWord) -> bool:
        if self.domain_predicate is not None:
            return self.domain_predicate(w)
        return run_accepts(self.domain, w)

    def holds(self, name, args) -> bool:
        rel = self.relations[name]
        if rel.predicate is not None:
            return rel.predicate(*args)
        from .words import convolve

        w = args[0] if rel.arity == 1 else convolve(*args)
        return run_accepts(rel.automaton, w)


def equality_automaton(n: int, alphabet) -> OrdinalAutomaton:
    letters = sorted(alphabet)
    steps = {("q", (a, a), "q") for a in letters} | {("q", BLANK, "q")}
    return OrdinalAutomaton.explicit(n, pair_alphabet(alphabet), ["q"], "q", steps, {"q"}, [({"q"}, "q")])


def ordinal_structure(n: int, bound: OrdinalCNF) -> StructurePresentation:
    """(bound, <, =) with brute-force semantics read off the ordinals themselves."""
    P = build_order_automaton(n, bound)

    def value(w):
        try:
            return P.decode(w)
        except WordError:
            return None

    def in_dom(w):
        x = value(w)
        return x is not None and w.letters() <= P.alphabet and cnf_compare(x, P.bound) is Order.LT

    S = StructurePresentation(n, P.alphabet, P.domain, domain_predicate=in_dom, source=P)
    S.add_relation("lt", 2, P.order, lambda a, b: cnf_compare(value(a), value(b)) is Order.LT)
    S.add_relation("eq", 2, equality_automaton(n, P.alphabet), lambda a, b: a == b)
    return S


def ordinal_constant(S: StructurePresentation, name: str, xi: OrdinalCNF):
    S.add_constant(name, S.source.encode(xi))


# compilation

class _Compiler:
    def __init__(self, S: StructurePresentation, variables: list):
        self.S = S
        self.vars = variables
        self.m = len(variables)
        self.letters = tuple_alphabet(S.alphabet, self.m)
        self.n = S.level
        self._dom = {}
        self._blank = {}

    def track(self, v):
        return self.vars.index(v)

    def universe(self):
        return ev.canonical_domain(self.n, self.letters)

    def domain(self, v):
        t = self.track(v)
        if t not in self._dom:
            key = ("dom", t, self.m)
            cache = self.S._compiled
            if key not in cache:
                cyl = cylindrify(self.S.domain, (t,), self.m, self.S.alphabet)
                cache[key] = ev.minimize(ev.compile_automaton(cyl))
            self._dom[t] = cache[key]
        return self._dom[t]

    def blank(self, vs):
        key = frozenset(self.track(v) for v in vs)
        if key not in self._blank:
            self._blank[key] = ev.blank_tracks(self.n, self.S.alphabet, self.m, key)
        return self._blank[key]

    def atom(self, f: Atom):
        if f.rel not in self.S.relations:
            raise FormulaError(f"undeclared relation {f.rel!r}")
        rel = self.S.relations[f.rel]
        if rel.arity != len(f.args):
            raise FormulaError(f"relation {f.rel!r} has arity {rel.arity}, used with {len(f.args)}")
        tracks = tuple(self.track(a) for a in f.args)
        key = ("rel", f.rel, tracks, self.m)
        cache = self.S._compiled
        if key not in cache:
            cyl = cylindrify(rel.automaton, tracks, self.m, self.S.alphabet)
            cache[key] = ev.minimize(ev.compile_automaton(cyl))
        return cache[key]

    def constrain(self, E, f):
        for v in free_vars(f):
            E = ev.intersect(E, self.domain(v))
        bound = _bound_vars(f)
        if bound:
            E = ev.intersect(E, self.blank(bound))
        return ev.minimize(E)

    def compile(self, f):
        if isinstance(f, Atom):
            return self.constrain(self.atom(f), f)
        if isinstance(f, Const):
            return self.universe() if f.value else ev.empty_nfa(self.n, self.letters)
        if isinstance(f, Not):
            return self.constrain(ev.complement(self.compile(f.sub)), f)
        if isinstance(f, And):
            return ev.minimize(ev.intersect(self.compile(f.left), self.compile(f.right)))
        if isinstance(f, Or):
            return self.constrain(ev.union(self.compile(f.left), self.compile(f.right)), f)
        kind, v = f.kind, f.var
        if kind == "A":
            return self.compile(Not(Quant("E", v, Not(f.body))))
        if kind == "Econt":
            # finite-support domains are countable
            return ev.empty_nfa(self.n, self.letters)
        body = ev.intersect(self.compile(f.body), self.domain(v))
        t = self.track(v)
        if kind == "E":
            return ev.minimize(ev.erase_track(body, t))
        return ev.minimize(ev.infinite_fibers(body, t))


@dataclass
class DefinedRelation:
    variables: tuple
    nfa: ev.EventNFA

    def accepts_word(self, w: FiniteOrdinalWord) -> bool:
        return self.nfa.accepts(ev.encode_word(w))

    def accepts(self, *args: FiniteOrdinalWord) -> bool:
        from .words import convolve, empty_word

        if not self.variables:
            return self.nfa.accepts(())
        w = args[0] if len(args) == 1 else convolve(*args)
        if len(args) == 1 and w.level != self.nfa.level:
            raise FormulaError("word level does not match the structure")
        return self.accepts_word(w)


def _compile_full(S: StructurePresentation, phi):
    phi = share_tracks(phi)
    free = free_vars(phi)
    variables = free + sorted(_bound_vars(phi))
    if not variables:
        variables = ["_"]
    return _Compiler(S, variables).compile(phi), free, variables


def define_relation(S: StructurePresentation, phi) -> DefinedRelation:
    """Automaton for the relation phi defines, one track per free variable."""
    if isinstance(phi, str):
        phi = parse_formula(phi)
    E, free, variables = _compile_full(S, phi)
    keep = [variables.index(v) for v in free]
    alphabet = S.alphabet if len(keep) == 1 else tuple_alphabet(S.alphabet, len(keep))

    def project(sym):
        if ev.is_digit(sym):
            return sym
        t = tuple(sym[i] for i in keep)
        return t[0] if len(keep) == 1 else t

    trans = {}
    for (p, a), qs in E.trans.items():
        trans.setdefault((p, project(a)), set()).update(qs)
    nfa = ev.EventNFA(E.level, frozenset(alphabet), E.states, E.initial, trans, E.finals)
    return DefinedRelation(tuple(free), ev.minimize(nfa))


def evaluate_sentence(S: StructurePresentation, phi) -> bool:
    if isinstance(phi, str):
        phi = parse_formula(phi)
    if free_vars(phi):
        raise FormulaError(f"not a sentence: free variables {free_vars(phi)}")
    E, _, _ = _compile_full(S, phi)
    return E.accepts(())


# brute force

def domain_elements(S: StructurePresentation, max_len: int) -> list:
    key = ("elements", max_len)
    if key in S._compiled:
        return S._compiled[key]
    out = []
    for word in ev.canonical_words(S.level, S.alphabet, max_len):
        w = ev.decode_digits(word, S.level)
        if S.in_domain(w):
            out.append(w)
    S._compiled[key] = out
    return out


def oracle_evaluate(S: StructurePresentation, phi, bound: int, slack: int = 0) -> bool:
    """Evaluate by enumerating domain elements whose encoding has length <= bound.

    A quantifier nested under d others ranges over encodings of length
    <= bound + d*slack (slack 0 is a single flat bound).  ``Einf``/``Ealeph0``
    hold when there are more witnesses than that length limit.
    """
    if isinstance(phi, str):
        phi = parse_formula(phi)
    if free_vars(phi):
        raise FormulaError(f"not a sentence: free variables {free_vars(phi)}")
    elements = {}
    atom_cache = {}

    def elems(limit):
        if limit not in elements:
            elements[limit] = domain_elements(S, limit)
        return elements[limit]

    def holds(rel, args):
        key = (rel, args)
        if key not in atom_cache:
            if rel not in S.relations:
                raise FormulaError(f"undeclared relation {rel!r}")
            if S.relations[rel].arity != len(args):
                raise FormulaError(f"relation {rel!r} used with wrong arity")
            atom_cache[key] = S.holds(rel, args)
        return atom_cache[key]

    def ev_(f, env, depth):
        if isinstance(f, Atom):
            return holds(f.rel, tuple(env[a] for a in f.args))
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Not):
            return not ev_(f.sub, env, depth)
        if isinstance(f, And):
            return ev_(f.left, env, depth) and ev_(f.right, env, depth)
        if isinstance(f, Or):
            return ev_(f.left, env, depth) or ev_(f.right, env, depth)
        limit = bound + depth * slack
        sat = (ev_(f.body, {**env, f.var: w}, depth + 1) for w in elems(limit))
        if f.kind == "E":
            return any(sat)
        if f.kind == "A":
            return all(sat)
        if f.kind == "Econt":
            return False
        return sum(1 for s in sat if s) > limit

    return ev_(phi, {}, 0)
