"""Ordinals below omega^(omega^n) in Cantor normal form.

An exponent below omega^n is an n-vector of naturals ``(g_{n-1}, ..., g_0)``
standing for ``omega^(n-1)*g_{n-1} + ... + g_0``; tuples compare
lexicographically, which is exactly the ordinal order.  An ordinal is a
strictly decreasing sequence of ``(exponent, coefficient)`` terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

ExponentVec = tuple  # tuple[int, ...] of length `level`


class OrdinalError(ValueError):
    pass


class LevelMismatch(OrdinalError):
    pass


class UndefinedSubtraction(OrdinalError):
    pass


class Order(Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"

    def __str__(self):
        return self.value


@total_ordering
@dataclass(frozen=True)
class OrdinalCNF:
    level: int
    terms: tuple = ()

    def __post_init__(self):
        if self.level < 1:
            raise OrdinalError(f"level must be >= 1, got {self.level}")
        terms = tuple((tuple(e), c) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        prev = None
        for exp, coef in terms:
            if len(exp) != self.level:
                raise OrdinalError(f"exponent {exp} does not have {self.level} coordinates")
            if any((not isinstance(g, int)) or g < 0 for g in exp):
                raise OrdinalError(f"exponent {exp} has a negative or non-integer coordinate")
            if not isinstance(coef, int) or coef < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {coef!r}")
            if prev is not None and not exp < prev:
                raise OrdinalError("exponents must strictly decrease (canonical form)")
            prev = exp

    # constructors

    @classmethod
    def zero(cls, level: int = 1) -> OrdinalCNF:
        return cls(level, ())

    @classmethod
    def natural(cls, k: int, level: int = 1) -> OrdinalCNF:
        if k < 0:
            raise OrdinalError("naturals are non-negative")
        return cls(level, ((zero_vec(level), k),)) if k else cls(level, ())

    @classmethod
    def omega_power(cls, exponent, coef: int = 1) -> OrdinalCNF:
        exponent = tuple(exponent)
        return cls(len(exponent), ((exponent, coef),))

    # queries

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_exponent(self):
        return self.terms[0][0] if self.terms else None

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and not any(self.terms[-1][0])

    def lifted(self, level: int) -> OrdinalCNF:
        """Same ordinal, written with exponent vectors of a higher level."""
        if level < self.level:
            raise LevelMismatch("cannot lower the level of an ordinal")
        pad = (0,) * (level - self.level)
        return OrdinalCNF(level, tuple((pad + e, c) for e, c in self.terms))

    def __lt__(self, other):
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return cnf_compare(self, other) is Order.LT

    def __add__(self, other):
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return cnf_add(self, other)

    def __str__(self):
        return format_cnf(self)


def zero_vec(level: int) -> tuple:
    return (0,) * level


def _check_levels(a: OrdinalCNF, b: OrdinalCNF):
    if a.level != b.level:
        raise LevelMismatch(f"level mismatch: {a.level} vs {b.level}")


def cnf_compare(a: OrdinalCNF, b: OrdinalCNF) -> Order:
    _check_levels(a, b)
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea != eb:
            return Order.GT if ea > eb else Order.LT
        if ca != cb:
            return Order.GT if ca > cb else Order.LT
    if len(a.terms) == len(b.terms):
        return Order.EQ
    return Order.GT if len(a.terms) > len(b.terms) else Order.LT


def cnf_add(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    _check_levels(a, b)
    if b.is_zero:
        return a
    lead, lead_coef = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead]
    same = [c for e, c in a.terms if e == lead]
    head = ((lead, lead_coef + same[0]),) if same else (b.terms[0],)
    return OrdinalCNF(a.level, tuple(kept) + head + b.terms[1:])


def cnf_left_subtract(a: OrdinalCNF, b: OrdinalCNF) -> OrdinalCNF:
    """The unique d with a + d = b; requires a <= b."""
    _check_levels(a, b)
    if cnf_compare(a, b) is Order.GT:
        raise UndefinedSubtraction(f"{format_cnf(a)} > {format_cnf(b)}")
    i = 0
    while i < len(a.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms) or i == len(b.terms):
        return OrdinalCNF(b.level, b.terms[i:])
    (ea, ca), (eb, cb) = a.terms[i], b.terms[i]
    if ea == eb:
        return OrdinalCNF(b.level, ((eb, cb - ca),) + b.terms[i + 1:])
    return OrdinalCNF(b.level, b.terms[i:])


# positions below omega^n <-> level-1 ordinals (exponents are plain naturals)

def vec_to_small(vec) -> OrdinalCNF:
    """Position/ordinal below omega^n given as an n-vector, as a level-1 CNF."""
    n = len(vec)
    return OrdinalCNF(1, tuple(((n - 1 - i,), g) for i, g in enumerate(vec) if g))


def small_to_vec(x: OrdinalCNF, n: int) -> tuple:
    if x.level != 1:
        raise LevelMismatch("expected a level-1 ordinal")
    out = [0] * n
    for (k,), c in x.terms:
        if k >= n:
            raise OrdinalError(f"{format_cnf(x)} is not below omega^{n}")
        out[n - 1 - k] = c
    return tuple(out)


# text form: w^(g_{n-1},...,g_0)*c + ...  ;  zero is 0

_TERM = re.compile(r"^w\^\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)(?:\s*\*\s*(\d+))?$")


def format_cnf(x: OrdinalCNF) -> str:
    if x.is_zero:
        return "0"
    return " + ".join(f"w^({','.join(map(str, e))})*{c}" for e, c in x.terms)


def parse_cnf(text: str, level: int | None = None) -> OrdinalCNF:
    """Parse the CNF text form.  Bare naturals are accepted as ``w^(0,..,0)*k``."""
    text = text.strip()
    if not text:
        raise OrdinalError("empty ordinal text")
    raw = []
    for part in text.split("+"):
        part = part.strip()
        if part.isdigit():
            raw.append((None, int(part)))
            continue
        m = _TERM.match(part)
        if not m:
            raise OrdinalError(f"malformed CNF term {part!r}")
        exp = tuple(int(g) for g in m.group(1).split(","))
        raw.append((exp, int(m.group(2)) if m.group(2) else 1))
    levels = {len(e) for e, _ in raw if e is not None}
    if len(levels) > 1:
        raise OrdinalError(f"terms of different levels in {text!r}")
    if levels:
        (found,) = levels
        if level is not None and level != found:
            raise LevelMismatch(f"expected level {level}, found {found}")
        level = found
    level = level or 1
    terms = []
    for exp, c in raw:
        if exp is None:
            if c == 0:
                if len(raw) > 1:
                    raise OrdinalError("0 may only appear alone")
                continue
            exp = zero_vec(level)
        terms.append((exp, c))
    return OrdinalCNF(level, tuple(terms))
