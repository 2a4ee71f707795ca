"""The lexicographic orders on decreasing sequences.

``lex1``: first difference decides, a proper prefix is smaller.
``lex2``: first difference decides, a proper prefix is larger.
``star``: the intersection of ``lex1`` and ``lex2`` (a partial order).
``lex3``: a proper prefix is smaller; at the first difference the smaller
entry wins on even positions and the larger entry wins on odd positions.

Both ``lex1`` and ``lex2`` are well-orders; :func:`min_lex2` and
:func:`min_lex1` find minima greedily, one coordinate at a time, without
sorting.
"""
from __future__ import annotations

import enum
from functools import cmp_to_key
from typing import Callable, Iterable

from .dstree import DecSeq
from .ordinal import Cmp

__all__ = [
    "OrderKind",
    "cmp_lex1",
    "cmp_lex2",
    "cmp_lex3",
    "leq_star",
    "lt_star",
    "comparator",
    "lex2_key",
    "sort_by",
    "min_lex1",
    "min_lex2",
]


class OrderKind(enum.Enum):
    LEX1 = "lex1"
    LEX2 = "lex2"
    LEX3 = "lex3"
    STAR = "star"


def _first_diff(a: DecSeq, b: DecSeq) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def cmp_lex1(a: DecSeq, b: DecSeq) -> Cmp:
    i = _first_diff(a, b)
    if i < len(a) and i < len(b):
        return Cmp.LT if a[i] < b[i] else Cmp.GT
    return Cmp.of(len(a), len(b))


def cmp_lex2(a: DecSeq, b: DecSeq) -> Cmp:
    i = _first_diff(a, b)
    if i < len(a) and i < len(b):
        return Cmp.LT if a[i] < b[i] else Cmp.GT
    return Cmp.of(len(b), len(a))


def cmp_lex3(a: DecSeq, b: DecSeq) -> Cmp:
    i = _first_diff(a, b)
    if i < len(a) and i < len(b):
        less = a[i] < b[i] if i % 2 == 0 else a[i] > b[i]
        return Cmp.LT if less else Cmp.GT
    return Cmp.of(len(a), len(b))


def leq_star(a: DecSeq, b: DecSeq) -> bool:
    return cmp_lex1(a, b) <= 0 and cmp_lex2(a, b) <= 0


def lt_star(a: DecSeq, b: DecSeq) -> bool:
    return a != b and leq_star(a, b)


def comparator(kind: OrderKind | str) -> Callable[[DecSeq, DecSeq], Cmp]:
    kind = OrderKind(kind)
    if kind is OrderKind.STAR:
        raise ValueError("star is a partial order and has no total comparator")
    return {OrderKind.LEX1: cmp_lex1, OrderKind.LEX2: cmp_lex2, OrderKind.LEX3: cmp_lex3}[kind]


class _Top:
    """Sentinel above every ordinal."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "TOP"


_TOP = _Top()


def lex2_key(seq: DecSeq) -> tuple:
    """Sort key realising <^2 (a sequence sorts after its extensions)."""
    return seq + (_TOP,)


def sort_by(seqs: Iterable[DecSeq], kind: OrderKind | str) -> list[DecSeq]:
    kind = OrderKind(kind)
    seqs = list(seqs)
    if kind is OrderKind.LEX1:
        return sorted(seqs)
    if kind is OrderKind.LEX2:
        return sorted(seqs, key=lex2_key)
    return sorted(seqs, key=cmp_to_key(comparator(kind)))


def min_lex2(A: Iterable[DecSeq]) -> DecSeq:
    """The <^2-least member of a non-empty finite set.

    Builds the minimum coordinate by coordinate: each step takes the least
    next entry among the members that agree with what has been built so far,
    and stops when no such member is longer.
    """
    cands = list(A)
    if not cands:
        raise ValueError("min of an empty set")
    built: list = []
    n = 0
    while True:
        longer = [s for s in cands if len(s) > n]
        if not longer:
            break
        a = min(s[n] for s in longer)
        built.append(a)
        cands = [s for s in longer if s[n] == a]
        n += 1
    return tuple(built)


def min_lex1(A: Iterable[DecSeq]) -> DecSeq:
    """The <^1-least member: the shortest prefix of the <^2-minimum lying in ``A``."""
    members = set(A)
    top = min_lex2(members)
    for m in range(len(top) + 1):
        if top[:m] in members:
            return top[:m]
    raise AssertionError("unreachable: min_lex2 returns a member")
