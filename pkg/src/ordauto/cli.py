"""Command-line front end.

Exit status: 0 success or true/accept, 1 false/reject, 2 usage or semantic
error, 3 malformed input.  Diagnostics go to stderr as ``error: <kind>: <detail>``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import events as ev
from .automaton import (
    AutomatonError,
    check_disjoint_substitution,
    intersection,
    run_accepts,
    substitute,
    union,
)
from .formats import (
    FormatError,
    PresentationSpec,
    read_automaton,
    read_eventnfa,
    read_presentation,
    read_word,
    sniff,
    structure_from_spec,
    write_automaton,
    write_eventnfa,
    write_presentation,
    write_word,
)
from .ordinals import OrdinalError, cnf_add, cnf_compare, cnf_left_subtract, format_cnf, parse_cnf
from .words import BLANK, WordError, letter_str

OK, FALSE, USAGE, BAD_INPUT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code, kind, detail):
        super().__init__(detail)
        self.code, self.kind, self.detail = code, kind, detail


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise CliError(USAGE, "io", f"{path}: {e.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cnf(text, level=None):
    try:
        return parse_cnf(text, level)
    except OrdinalError as e:
        raise CliError(BAD_INPUT, "format", f"ordinal {text!r}: {e}") from None


def _load_automaton_or_nfa(path):
    text = _read(path)
    kind = sniff(text)
    if kind == "eventnfa":
        return read_eventnfa(text, path)
    if kind == "automaton":
        return read_automaton(text, path)
    raise CliError(BAD_INPUT, "format", f"{path}: expected an automaton or event NFA, found a {kind} file")


def _pair_levels(args):
    level = args.level
    a = _cnf(args.a, level)
    b = _cnf(args.b, level if level else None)
    if a.level != b.level:
        top = max(a.level, b.level)
        a, b = a.lifted(top), b.lifted(top)
    return a, b


# commands

def cmd_ord(args):
    a, b = _pair_levels(args)
    if args.op == "cmp":
        print(cnf_compare(a, b).name)
    elif args.op == "add":
        print(format_cnf(cnf_add(a, b)))
    else:
        print(format_cnf(cnf_left_subtract(a, b)))
    return OK


def cmd_encode(args):
    from .presentations import _as_level, encode_ordinal, track_alphabet, width_of

    x = _as_level(_cnf(args.ordinal), args.n)
    _emit(write_word(encode_ordinal(x, args.n), track_alphabet(width_of(x))), args.output)
    return OK


def cmd_decode(args):
    from .presentations import decode_word

    w = read_word(_read(args.word), args.word)
    print(format_cnf(decode_word(w, w.level)))
    return OK


def cmd_present(args):
    from .presentations import build_order_automaton

    bound = _cnf(args.bound)
    constants = {}
    for item in args.constant or ():
        name, _, value = item.partition("=")
        if not value:
            raise CliError(USAGE, "usage", f"--constant expects name=ORDINAL, got {item!r}")
        constants[name] = _cnf(value, args.n)
    P = build_order_automaton(args.n, bound)
    spec = PresentationSpec(args.n, P.bound, constants)
    _emit(write_presentation(spec), args.output)
    if args.automata:
        d = Path(args.automata)
        d.mkdir(parents=True, exist_ok=True)
        (d / "domain.aut").write_text(write_automaton(P.domain))
        (d / "order.aut").write_text(write_automaton(P.order))
    return OK


def cmd_run(args):
    A = _load_automaton_or_nfa(args.automaton)
    w = read_word(_read(args.word), args.word)
    if isinstance(A, ev.EventNFA):
        ok = A.accepts(ev.encode_word(w))
    else:
        ok = run_accepts(A, w)
    print("ACCEPT" if ok else "REJECT")
    return OK if ok else FALSE


def cmd_compile(args):
    A = read_automaton(_read(args.automaton), args.automaton)
    E = ev.compile_automaton(A)
    if args.canonical:
        E = ev.intersect(E, ev.canonical_domain(E.level, E.alphabet))
    _emit(write_eventnfa(E), args.output)
    return OK


def cmd_bool(args):
    ops = [_load_automaton_or_nfa(p) for p in args.inputs]
    want = 1 if args.op == "not" else 2
    if len(ops) != want:
        raise CliError(USAGE, "usage", f"bool {args.op} takes {want} input file(s)")
    if args.op != "not" and all(not isinstance(x, ev.EventNFA) for x in ops):
        R = (intersection if args.op == "and" else union)(*ops)
        _emit(write_automaton(R), args.output)
        return OK
    nfas = [x if isinstance(x, ev.EventNFA) else ev.compile_automaton(x) for x in ops]
    if args.op == "not":
        R = ev.complement(nfas[0])
    elif args.op == "and":
        R = ev.intersect(*nfas)
    else:
        R = ev.union(*nfas)
    _emit(write_eventnfa(ev.renamed(R)), args.output)
    return OK


def cmd_substitute(args):
    R = read_automaton(_read(args.outer), args.outer)
    subs = {}
    for item in args.sub:
        letter, _, path = item.partition("=")
        if not path:
            raise CliError(USAGE, "usage", f"--sub expects LETTER=FILE, got {item!r}")
        subs[BLANK if letter == BLANK else letter] = read_automaton(_read(path), path)
    if args.check_disjoint and not check_disjoint_substitution(subs):
        print("OVERLAP", file=sys.stderr)
        return FALSE
    _emit(write_automaton(substitute(R, subs)), args.output)
    return OK


def cmd_countable(args):
    from .countable import countability_level1

    A = read_automaton(_read(args.automaton), args.automaton)
    res = countability_level1(A)
    print(res.verdict)
    word = lambda xs: " ".join(letter_str(a) for a in xs) or "-"
    if res.countable:
        for U, v in res.decomposition:
            print(f"piece prefix-states {len(U.states)} cycle {word(v)}")
        return OK
    w = res.witness
    print(f"state {w.state}")
    print(f"prefix {word(w.prefix)}")
    for c in w.cycles:
        print(f"cycle {word(c)}")
    return FALSE


def cmd_query(args):
    from .logic import (
        define_relation,
        evaluate_sentence,
        free_vars,
        oracle_evaluate,
        parse_formula,
    )

    spec = read_presentation(_read(args.presentation), args.presentation)
    phi = parse_formula(args.formula)
    S = structure_from_spec(spec)
    if free_vars(phi):
        if args.oracle is not None:
            raise CliError(USAGE, "usage", "--oracle needs a sentence")
        R = define_relation(S, phi)
        header = "# variables " + " ".join(R.variables) + "\n"
        _emit(header + write_eventnfa(ev.renamed(R.nfa)), args.output)
        return OK
    if args.oracle is not None:
        ok = oracle_evaluate(S, phi, args.oracle, args.slack)
    else:
        ok = evaluate_sentence(S, phi)
    print("TRUE" if ok else "FALSE")
    return OK if ok else FALSE


def cmd_selftest(args):
    from .acceptance import AcceptanceConfig, run_all

    cfg = AcceptanceConfig.quick() if args.quick else AcceptanceConfig()
    only = set(args.only) if args.only else None
    results = run_all(cfg, only=only)
    ok = all(r.passed for r in results)
    print("SELFTEST PASS" if ok else "SELFTEST FAIL")
    return OK if ok else FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordauto", description="Automata on finite omega^n-words.")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("ord", help="ordinal arithmetic on CNF text")
    o.add_argument("op", choices=["cmp", "add", "sub"])
    o.add_argument("a")
    o.add_argument("b")
    o.add_argument("--level", type=int, help="exponent length (default: from the text, else 1)")
    o.set_defaults(fn=cmd_ord)

    e = sub.add_parser("encode", help="word encoding of an ordinal")
    e.add_argument("ordinal")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("-o", "--output")
    e.set_defaults(fn=cmd_encode)

    d = sub.add_parser("decode", help="ordinal encoded by a word file")
    d.add_argument("word")
    d.set_defaults(fn=cmd_decode)

    pr = sub.add_parser("present", help="presentation of an ordinal bound")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--bound", required=True)
    pr.add_argument("--constant", action="append", help="name=ORDINAL (repeatable)")
    pr.add_argument("--automata", help="directory for domain.aut and order.aut")
    pr.add_argument("-o", "--output")
    pr.set_defaults(fn=cmd_present)

    r = sub.add_parser("run", help="does an automaton accept a word")
    r.add_argument("automaton")
    r.add_argument("word")
    r.set_defaults(fn=cmd_run)

    c = sub.add_parser("compile", help="event NFA of an ordinal automaton")
    c.add_argument("automaton")
    c.add_argument("--canonical", action="store_true", help="restrict to canonical encodings")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_compile)

    b = sub.add_parser("bool", help="and / or / not")
    b.add_argument("op", choices=["and", "or", "not"])
    b.add_argument("inputs", nargs="+")
    b.add_argument("-o", "--output")
    b.set_defaults(fn=cmd_bool)

    s = sub.add_parser("substitute", help="block substitution into a level-1 automaton")
    s.add_argument("outer")
    s.add_argument("--sub", action="append", required=True, help="LETTER=FILE (repeatable; _ is the blank)")
    s.add_argument("--check-disjoint", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_substitute)

    ct = sub.add_parser("countable", help="countability of a deterministic level-1 language")
    ct.add_argument("automaton")
    ct.set_defaults(fn=cmd_countable)

    q = sub.add_parser("query", help="evaluate a formula over a presentation")
    q.add_argument("presentation")
    q.add_argument("formula")
    q.add_argument("--oracle", type=int, metavar="B", help="brute-force evaluation at bound B")
    q.add_argument("--slack", type=int, default=0)
    q.add_argument("-o", "--output")
    q.set_defaults(fn=cmd_query)

    st = sub.add_parser("selftest", help="run the acceptance grid")
    st.add_argument("--quick", action="store_true")
    st.add_argument("--only", type=int, nargs="*")
    st.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    from .logic import FormulaError, FormulaSyntaxError
    from .presentations import PresentationError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and USAGE
    try:
        return args.fn(args)
    except CliError as e:
        print(f"error: {e.kind}: {e.detail}", file=sys.stderr)
        return e.code
    except (FormatError, WordError, FormulaSyntaxError) as e:
        print(f"error: format: {e}", file=sys.stderr)
        return BAD_INPUT
    except (OrdinalError, AutomatonError, PresentationError, FormulaError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
