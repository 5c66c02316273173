"""Plain-text file formats.

Every format is line based; blank lines and ``#`` comments are ignored.
Writers emit a canonical layout, so ``write(parse(write(x))) == write(x)``.

Word::

    level 2
    alphabet a b
    pos (1,0) a

Automaton (``_`` is the blank letter)::

    level 1
    alphabet a b
    states q0 q1
    initial q0
    final q1
    step q0 a q1
    step q1 _ q1
    limit {q1} q1

Event NFA (digits are written ``d0``, ``d1`` ...)::

    eventnfa
    level 1
    alphabet a
    states s0 s1
    initial s0
    final s1
    edge s0 d0 s0
    edge s0 a s1

Presentation of an ordinal, with optional named constants::

    presentation
    level 2
    bound w^(1,0)*1
    constant c_omega w^(0,1)*1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .automaton import AutomatonError, ExplicitLimits, OrdinalAutomaton, renamed
from .events import Digit, EventNFA, is_digit
from .ordinals import OrdinalCNF, OrdinalError, format_cnf, parse_cnf
from .words import BLANK, FiniteOrdinalWord, WordError, letter_str, parse_letter


class FormatError(ValueError):
    def __init__(self, cause, line=None, source=None):
        where = f"{source or '<input>'}" + (f":{line}" if line is not None else "")
        super().__init__(f"{where}: {cause}")
        self.cause = cause
        self.line = line
        self.source = source


_NAME = re.compile(r"[A-Za-z0-9_#.+'-]+$")
_DIGIT = re.compile(r"d\d+$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if line:
            yield no, line.split()


def _letter(tok, no, src):
    if tok == BLANK:
        return BLANK
    a = parse_letter(tok)
    parts = a if isinstance(a, tuple) else (a,)
    if any(not p or not _NAME.match(p) for p in parts):
        raise FormatError(f"bad letter {tok!r}", no, src)
    return a


def _int(tok, no, src, what="integer"):
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"expected {what}, found {tok!r}", no, src) from None
    if v < 0:
        raise FormatError(f"{what} must be non-negative", no, src)
    return v


def _sorted_letters(alphabet):
    return sorted(alphabet, key=letter_str)


# CNF

def write_cnf(x: OrdinalCNF) -> str:
    return f"level {x.level}\ncnf {format_cnf(x)}\n"


def read_cnf(text: str, source=None) -> OrdinalCNF:
    level, body = None, None
    for no, toks in _lines(text):
        if toks[0] == "level" and len(toks) == 2:
            level = _int(toks[1], no, source, "level")
        elif toks[0] == "cnf":
            body = " ".join(toks[1:])
            line = no
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no, source)
    if body is None:
        raise FormatError("missing 'cnf' line", None, source)
    try:
        return parse_cnf(body, level)
    except OrdinalError as e:
        raise FormatError(str(e), line, source) from None


# words

def write_word(w: FiniteOrdinalWord, alphabet=None) -> str:
    alphabet = alphabet if alphabet is not None else (w.alphabet or w.letters())
    out = [f"level {w.level}", "alphabet " + " ".join(map(letter_str, _sorted_letters(alphabet)))]
    for pos, a in w.support.items():
        out.append(f"pos ({','.join(map(str, pos))}) {letter_str(a)}")
    return "\n".join(out) + "\n"


def read_word(text: str, source=None) -> FiniteOrdinalWord:
    level, alphabet, support = None, None, {}
    for no, toks in _lines(text):
        key = toks[0]
        if key == "level" and len(toks) == 2:
            level = _int(toks[1], no, source, "level")
        elif key == "alphabet":
            alphabet = frozenset(_letter(t, no, source) for t in toks[1:])
            if BLANK in alphabet:
                raise FormatError("the blank may not be declared", no, source)
        elif key == "pos" and len(toks) == 3:
            if level is None:
                raise FormatError("'pos' before 'level'", no, source)
            m = re.fullmatch(r"\(([\d,\s]*)\)", toks[1])
            if not m:
                raise FormatError(f"bad position {toks[1]!r}", no, source)
            pos = tuple(_int(c, no, source, "coordinate") for c in m.group(1).split(",") if c.strip())
            if len(pos) != level:
                raise FormatError(f"position {toks[1]} has {len(pos)} coordinates, level is {level}", no, source)
            if pos in support:
                raise FormatError(f"position {toks[1]} given twice", no, source)
            a = _letter(toks[2], no, source)
            if a == BLANK:
                raise FormatError("blank letters are not stored", no, source)
            if alphabet is not None and a not in alphabet:
                raise FormatError(f"letter {toks[2]} not in alphabet", no, source)
            support[pos] = a
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no, source)
    if level is None:
        raise FormatError("missing 'level' line", None, source)
    try:
        return FiniteOrdinalWord(level, support, alphabet)
    except WordError as e:
        raise FormatError(str(e), None, source) from None


# ordinal automata

def _writable(A) -> bool:
    return isinstance(A.limits, ExplicitLimits) and all(
        isinstance(s, str) and _NAME.match(s) for s in A.states
    )


def write_automaton(A: OrdinalAutomaton) -> str:
    if not _writable(A):
        A = renamed(A)
    idx = {s: i for i, s in enumerate(A.states)}
    out = [
        f"level {A.level}",
        "alphabet " + " ".join(map(letter_str, _sorted_letters(A.alphabet))),
        "states " + " ".join(A.states),
        f"initial {A.initial}",
        "final " + " ".join(sorted(A.finals, key=idx.get)),
    ]
    for p, a, q in sorted(A.steps, key=lambda s: (idx[s[0]], a_key(s[1]), idx[s[2]])):
        out.append(f"step {p} {letter_str(a)} {q}")
    pairs = sorted(A.limits.pairs(), key=lambda pq: (sorted(idx[s] for s in pq[0]), idx[pq[1]]))
    for S, q in pairs:
        out.append("limit {" + ",".join(sorted(S, key=idx.get)) + "} " + q)
    return "\n".join(out) + "\n"


def a_key(a):
    return (0, "") if a == BLANK else (1, letter_str(a))


def read_automaton(text: str, source=None) -> OrdinalAutomaton:
    level, alphabet, states, initial, finals = None, None, None, None, set()
    steps, limits = [], []
    seen_final = False
    where = {}
    for no, toks in _lines(text):
        key = toks[0]
        if key == "level" and len(toks) == 2:
            level = _int(toks[1], no, source, "level")
        elif key == "alphabet":
            alphabet = [_letter(t, no, source) for t in toks[1:]]
            if BLANK in alphabet:
                raise FormatError("the blank '_' is implicit and may not be declared", no, source)
        elif key == "states":
            states = toks[1:]
            bad = [s for s in states if not _NAME.match(s)]
            if bad or not states:
                raise FormatError(f"bad state names {bad}" if bad else "no states", no, source)
            if len(set(states)) != len(states):
                raise FormatError("duplicate state names", no, source)
        elif key == "initial" and len(toks) == 2:
            initial = toks[1]
            where[initial] = no
        elif key == "final":
            finals.update(toks[1:])
            where.update((q, no) for q in toks[1:] if q not in where)
            seen_final = True
        elif key == "step" and len(toks) == 4:
            if alphabet is None:
                raise FormatError("'step' before 'alphabet'", no, source)
            a = _letter(toks[2], no, source)
            if a != BLANK and a not in alphabet:
                raise FormatError(f"letter {toks[2]} not in alphabet", no, source)
            _known(states, (toks[1], toks[3]), no, source)
            steps.append((toks[1], a, toks[3]))
        elif key == "limit":
            m = re.fullmatch(r"limit\s+\{([^{}]*)\}\s+(\S+)", " ".join(toks))
            if not m:
                raise FormatError("expected 'limit {q1,q2,...} q'", no, source)
            src = [s.strip() for s in m.group(1).split(",") if s.strip()]
            if not src:
                raise FormatError("limit source set is empty", no, source)
            _known(states, src + [m.group(2)], no, source)
            limits.append((src, m.group(2)))
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no, source)
    for what, val in (("level", level), ("alphabet", alphabet), ("states", states), ("initial", initial)):
        if val is None:
            raise FormatError(f"missing '{what}' line", None, source)
    if not seen_final:
        raise FormatError("missing 'final' line", None, source)
    for q in [initial] + sorted(finals):
        _known(states, [q], where.get(q), source)
    try:
        return OrdinalAutomaton.explicit(level, alphabet, states, initial, steps, finals, limits)
    except AutomatonError as e:
        raise FormatError(str(e), None, source) from None


def _known(states, names, no, src):
    if states is None:
        raise FormatError("state used before the 'states' line", no, src)
    for s in names:
        if s not in states:
            raise FormatError(f"undeclared state {s!r}", no, src)


# event automata

def write_eventnfa(E: EventNFA) -> str:
    if not all(isinstance(s, str) and _NAME.match(s) for s in E.states):
        from .events import renamed as nfa_renamed

        E = nfa_renamed(E)
    idx = {s: i for i, s in enumerate(E.states)}
    out = [
        "eventnfa",
        f"level {E.level}",
        "alphabet " + " ".join(map(letter_str, _sorted_letters(E.alphabet))),
        "states " + " ".join(E.states),
        "initial " + " ".join(sorted(E.initial, key=idx.get)),
        "final " + " ".join(sorted(E.finals, key=idx.get)),
    ]
    edges = [(p, a, q) for (p, a), qs in E.trans.items() for q in qs]
    for p, a, q in sorted(edges, key=lambda e: (idx[e[0]], _sym_order(e[1]), idx[e[2]])):
        out.append(f"edge {p} {a} {q}" if is_digit(a) else f"edge {p} {letter_str(a)} {q}")
    return "\n".join(out) + "\n"


def _sym_order(a):
    return (0, a.k, "") if is_digit(a) else (1, 0, letter_str(a))


def read_eventnfa(text: str, source=None) -> EventNFA:
    body = list(_lines(text))
    if not body or body[0][1] != ["eventnfa"]:
        raise FormatError("expected 'eventnfa' header", body[0][0] if body else None, source)
    level, alphabet, states = None, None, None
    initial, finals, trans = None, None, {}
    for no, toks in body[1:]:
        key = toks[0]
        if key == "level" and len(toks) == 2:
            level = _int(toks[1], no, source, "level")
        elif key == "alphabet":
            alphabet = [_letter(t, no, source) for t in toks[1:]]
            if BLANK in alphabet or any(isinstance(a, str) and _DIGIT.match(a) for a in alphabet):
                raise FormatError("letters may not be '_' or look like digits d<k>", no, source)
        elif key == "states":
            states = toks[1:]
            if any(not _NAME.match(s) for s in states) or len(set(states)) != len(states):
                raise FormatError("bad or duplicate state names", no, source)
        elif key == "initial":
            _known(states, toks[1:], no, source)
            initial = toks[1:]
        elif key == "final":
            _known(states, toks[1:], no, source)
            finals = toks[1:]
        elif key == "edge" and len(toks) == 4:
            if level is None or alphabet is None:
                raise FormatError("'edge' before 'level' and 'alphabet'", no, source)
            _known(states, (toks[1], toks[3]), no, source)
            if _DIGIT.match(toks[2]):
                sym = Digit(int(toks[2][1:]))
                if sym.k >= level:
                    raise FormatError(f"digit {toks[2]} out of range for level {level}", no, source)
            else:
                sym = _letter(toks[2], no, source)
                if sym not in alphabet:
                    raise FormatError(f"letter {toks[2]} not in alphabet", no, source)
            trans.setdefault((toks[1], sym), set()).add(toks[3])
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", no, source)
    for what, val in (("level", level), ("alphabet", alphabet), ("states", states),
                      ("initial", initial), ("final", finals)):
        if val is None:
            raise FormatError(f"missing '{what}' line", None, source)
    return EventNFA(level, frozenset(alphabet), tuple(states), initial, trans, finals)


# presentations

@dataclass
class PresentationSpec:
    level: int
    bound: OrdinalCNF
    constants: dict = field(default_factory=dict)  # name -> OrdinalCNF


def write_presentation(P: PresentationSpec) -> str:
    out = ["presentation", f"level {P.level}", f"bound {format_cnf(P.bound)}"]
    for name in sorted(P.constants):
        out.append(f"constant {name} {format_cnf(P.constants[name])}")
    return "\n".join(out) + "\n"


def read_presentation(text: str, source=None) -> PresentationSpec:
    body = list(_lines(text))
    if not body or body[0][1] != ["presentation"]:
        raise FormatError("expected 'presentation' header", body[0][0] if body else None, source)
    level, bound, consts = None, None, {}
    for no, toks in body[1:]:
        try:
            if toks[0] == "level" and len(toks) == 2:
                level = _int(toks[1], no, source, "level")
                if level < 1:
                    raise FormatError("level must be >= 1", no, source)
            elif toks[0] == "bound":
                if level is None:
                    raise FormatError("'bound' before 'level'", no, source)
                bound = parse_cnf(" ".join(toks[1:]), level)
            elif toks[0] == "constant" and len(toks) >= 3:
                if level is None:
                    raise FormatError("'constant' before 'level'", no, source)
                if not re.fullmatch(r"[a-z_][A-Za-z0-9_']*", toks[1]) or toks[1] in consts:
                    raise FormatError(f"bad or repeated constant name {toks[1]!r}", no, source)
                consts[toks[1]] = parse_cnf(" ".join(toks[2:]), level)
            else:
                raise FormatError(f"unexpected line {' '.join(toks)!r}", no, source)
        except OrdinalError as e:
            raise FormatError(str(e), no, source) from None
    if level is None or bound is None:
        raise FormatError("presentation needs 'level' and 'bound'", None, source)
    return PresentationSpec(level, bound, consts)


def structure_from_spec(P: PresentationSpec):
    from .logic import ordinal_constant, ordinal_structure

    S = ordinal_structure(P.level, P.bound)
    for name, xi in P.constants.items():
        ordinal_constant(S, name, xi)
    return S


def sniff(text: str) -> str:
    """Which format a text is in: cnf, word, automaton, eventnfa or presentation."""
    for _, toks in _lines(text):
        if toks[0] in ("eventnfa", "presentation"):
            return toks[0]
        break
    keys = {toks[0] for _, toks in _lines(text)}
    if "cnf" in keys:
        return "cnf"
    if "pos" in keys or ("states" not in keys and "alphabet" in keys):
        return "word"
    return "automaton"
