"""Ordinals below epsilon_0 in Cantor normal form.

Finite ordinals are plain Python ``int`` values everywhere in the package;
:class:`Ordinal` instances only ever represent ordinals >= omega.  The
constructor helpers normalise, so ``ordinal([(0, 3)])`` returns ``3`` and
equality/hashing never has to reconcile two spellings of the same value.
"""
from __future__ import annotations

import enum
import re
from typing import Iterable, Union

__all__ = [
    "Cmp",
    "Ordinal",
    "OrdinalSyntaxError",
    "Ord",
    "OMEGA",
    "ordinal",
    "is_ordinal",
    "is_finite",
    "terms_of",
    "ord_cmp",
    "ord_add",
    "ord_mul_nat",
    "ord_max",
    "ord_parse",
    "ord_format",
]


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b) -> "Cmp":
        if a < b:
            return cls.LT
        if b < a:
            return cls.GT
        return cls.EQ


class OrdinalSyntaxError(ValueError):
    """Raised for malformed ordinal literals; ``pos`` is the 0-based offset."""

    def __init__(self, msg: str, text: str = "", pos: int = 0):
        super().__init__(f"{msg} at position {pos} in {text!r}" if text else msg)
        self.text = text
        self.pos = pos


class Ordinal:
    """An infinite ordinal below epsilon_0.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs with strictly
    decreasing exponents (each an ``int`` or ``Ordinal``) and coefficients >= 1.
    Use :func:`ordinal` rather than calling this directly.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple):
        self.terms = terms
        self._hash = hash(("Ordinal", terms))

    # -- comparison -------------------------------------------------------
    # Lexicographic comparison of the term tuples is exactly CNF order
    # because exponents are themselves ordered and a longer term list with
    # an equal prefix is the larger ordinal.
    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        if isinstance(other, int):
            return False
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if isinstance(other, Ordinal):
            return self.terms < other.terms
        if isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Ordinal):
            return self.terms <= other.terms
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Ordinal):
            return self.terms > other.terms
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, Ordinal):
            return self.terms >= other.terms
        if isinstance(other, int):
            return True
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Ordinal)):
            return ord_add(self, other)
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, int):
            return ord_add(other, self)
        return NotImplemented

    def __mul__(self, n):
        if isinstance(n, int):
            return ord_mul_nat(self, n)
        return NotImplemented

    def __repr__(self):
        return f"Ordinal({ord_format(self)!r})"

    def __str__(self):
        return ord_format(self)


Ord = Union[int, Ordinal]


def is_ordinal(x) -> bool:
    return (isinstance(x, int) and not isinstance(x, bool) and x >= 0) or isinstance(x, Ordinal)


def is_finite(x: Ord) -> bool:
    return isinstance(x, int)


def terms_of(a: Ord) -> tuple:
    """CNF term tuple of ``a``; finite ``n > 0`` is ``((0, n),)``."""
    if isinstance(a, Ordinal):
        return a.terms
    if a < 0:
        raise ValueError(f"negative ordinal {a}")
    return ((0, a),) if a else ()


def ordinal(terms: Iterable) -> Ord:
    """Build a normalised ordinal from ``(exponent, coefficient)`` pairs.

    Raises ``ValueError`` if exponents are not strictly decreasing or a
    coefficient is not a positive integer.
    """
    terms = tuple((e, c) for e, c in terms)
    prev = None
    for e, c in terms:
        if not is_ordinal(e):
            raise ValueError(f"exponent {e!r} is not an ordinal")
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise ValueError(f"coefficient {c!r} must be a positive integer")
        if prev is not None and not e < prev:
            raise ValueError("exponents must be strictly decreasing")
        prev = e
    if not terms:
        return 0
    if terms[0][0] == 0:
        return terms[0][1]
    return Ordinal(terms)


OMEGA = Ordinal(((1, 1),))


def ord_cmp(a: Ord, b: Ord) -> Cmp:
    return Cmp.of(a, b)


def ord_max(a: Ord, b: Ord) -> Ord:
    return b if a < b else a


def ord_add(a: Ord, b: Ord) -> Ord:
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    tb = terms_of(b)
    if not tb:
        return a
    lead = tb[0][0]
    out = []
    for e, c in terms_of(a):
        if e > lead:
            out.append((e, c))
        elif e == lead:
            tb = ((e, c + tb[0][1]),) + tb[1:]
            break
        else:
            break
    return ordinal(out + list(tb))


def ord_mul_nat(a: Ord, n: int) -> Ord:
    if n < 0:
        raise ValueError("multiplier must be a natural number")
    if isinstance(a, int):
        return a * n
    if n == 0:
        return 0
    (e, c), rest = a.terms[0], a.terms[1:]
    return Ordinal(((e, c * n),) + rest)


# -- literals ---------------------------------------------------------------

def ord_format(a: Ord) -> str:
    if isinstance(a, int):
        return str(a)
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        if e == 1:
            s = "w"
        elif isinstance(e, int) or e == OMEGA:
            s = f"w^{ord_format(e)}"
        else:
            s = f"w^({ord_format(e)})"
        parts.append(s if c == 1 else f"{s}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        return OrdinalSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def natural(self):
        self.skip()
        m = re.match(r"\d+", self.text[self.pos:])
        if not m:
            raise self.error("expected a natural number")
        self.pos += m.end()
        return int(m.group())

    def literal(self) -> Ord:
        start = self.pos
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        if len(terms) > 1 and any(c == 0 for _, c, _ in terms):
            raise self.error("zero term inside a sum", start)
        terms = [(e, c, p) for e, c, p in terms if c]
        for (e0, _, _), (e1, _, p1) in zip(terms, terms[1:]):
            if not e1 < e0:
                raise self.error("exponents not strictly decreasing", p1)
        return ordinal((e, c) for e, c, _ in terms)

    def exponent(self) -> Ord:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.literal()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return e
        if ch in ("w", "ω"):
            self.pos += 1
            return OMEGA
        return self.natural()

    def term(self):
        ch = self.peek()
        p = self.pos
        if ch in ("w", "ω"):
            self.pos += 1
            e: Ord = 1
            if self.peek() == "^":
                self.pos += 1
                e = self.exponent()
                if e == 0:
                    raise self.error("use a natural number instead of w^0", p)
            c = 1
            if self.peek() == "*":
                self.pos += 1
                c = self.natural()
                if c < 1:
                    raise self.error("coefficient must be positive")
            return e, c, p
        if ch.isdigit():
            return 0, self.natural(), p
        raise self.error("expected a term")


def ord_parse(text: str) -> Ord:
    """Parse an ordinal literal such as ``"w^2*3+w+4"``.

    Exponents are a natural, ``w``, or a parenthesised literal
    (``w^(w+1)``).  ``ω`` is accepted as a synonym for ``w``.
    """
    p = _Parser(text)
    if not p.peek():
        raise p.error("empty literal")
    value = p.literal()
    if p.peek():
        raise p.error("unexpected trailing input")
    return value
