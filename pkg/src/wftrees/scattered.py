"""Scattered linear orders as terms, and their embeddings into (ds(alpha), <^3).

A term is a single point (:class:`Atom`), ``beta`` copies of a term laid
out forwards or backwards (:class:`Prod`), or two terms one after the other
(:class:`Sum`).  Positions inside a term are nested tuples:

* ``Atom``: ``()``
* ``Prod``: ``(gamma, inner)`` with ``gamma < beta`` the copy index
* ``Sum``: ``(0, inner)`` for the left summand, ``(1, inner)`` for the right

If the base embeds into ds(alpha), copy ``gamma`` of a forward product goes to
``<alpha+beta+gamma+1, alpha+beta>`` followed by the base image; a reversed
product uses ``<alpha+beta*2, alpha+beta+gamma>`` instead.  Everything lands
in ds(alpha+beta*2+1).  A sum is handled as a two-copy forward product after
placing both summands in the larger of their two trees.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Union

from .dstree import DecSeq
from .ordinal import Ord, is_finite, is_ordinal, ord_add, ord_format, ord_max, ord_mul_nat, ord_parse
from .orders import cmp_lex3

__all__ = [
    "Atom",
    "Prod",
    "Sum",
    "Term",
    "TermError",
    "LinearOrder",
    "TermEmbedding",
    "alpha_bound",
    "embed_term",
    "materialize",
    "check_order_embedding",
    "order_violation",
    "parse_term",
    "format_term",
    "all_terms",
    "term_depth",
    "MATERIALIZE_CAP",
]

MATERIALIZE_CAP = 100_000


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    pass


@dataclass(frozen=True)
class Prod:
    base: "Term"
    beta: Ord
    reverse: bool = False

    def __post_init__(self):
        if not is_ordinal(self.beta) or self.beta == 0:
            raise TermError(f"product size must be an ordinal >= 1, got {self.beta!r}")


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"


Term = Union[Atom, Prod, Sum]


def term_depth(t: Term) -> int:
    """Nesting depth, counting an atom as 1."""
    if isinstance(t, Atom):
        return 1
    if isinstance(t, Prod):
        return 1 + term_depth(t.base)
    return 1 + max(term_depth(t.left), term_depth(t.right))


def is_finite_term(t: Term) -> bool:
    if isinstance(t, Atom):
        return True
    if isinstance(t, Prod):
        return is_finite(t.beta) and is_finite_term(t.base)
    return is_finite_term(t.left) and is_finite_term(t.right)


def alpha_bound(t: Term) -> Ord:
    """An ``alpha`` with the term embedded into ds(alpha) by :func:`embed_term`."""
    if isinstance(t, Atom):
        return 0
    if isinstance(t, Prod):
        return ord_add(ord_add(alpha_bound(t.base), ord_mul_nat(t.beta, 2)), 1)
    return ord_add(ord_max(alpha_bound(t.left), alpha_bound(t.right)), 5)


def _stem(alpha: Ord, beta: Ord, gamma: Ord, reverse: bool) -> DecSeq:
    ab = ord_add(alpha, beta)
    if reverse:
        return (ord_add(alpha, ord_mul_nat(beta, 2)), ord_add(ab, gamma))
    return (ord_add(ord_add(ab, gamma), 1), ab)


def _embed(t: Term, pos) -> DecSeq:
    if isinstance(t, Atom):
        if pos != ():
            raise TermError(f"bad position {pos!r} for an atom")
        return ()
    if not (isinstance(pos, tuple) and len(pos) == 2):
        raise TermError(f"bad position {pos!r}")
    gamma, inner = pos
    if isinstance(t, Prod):
        if not (is_ordinal(gamma) and gamma < t.beta):
            raise TermError(f"copy index {gamma!r} out of range for beta={ord_format(t.beta)}")
        return _stem(alpha_bound(t.base), t.beta, gamma, t.reverse) + _embed(t.base, inner)
    if gamma not in (0, 1):
        raise TermError(f"sum positions start with 0 or 1, got {gamma!r}")
    part = t.left if gamma == 0 else t.right
    alpha = ord_max(alpha_bound(t.left), alpha_bound(t.right))
    return _stem(alpha, 2, gamma, False) + _embed(part, inner)


class TermEmbedding:
    """The position -> sequence map of a term.  Defined for infinite terms too;
    only finite terms can list their items."""

    def __init__(self, term: Term):
        self.term = term
        self.alpha = alpha_bound(term)

    def __getitem__(self, pos) -> DecSeq:
        return _embed(self.term, pos)

    __call__ = __getitem__

    def items(self, cap: int = MATERIALIZE_CAP) -> list[tuple]:
        return [(p, _embed(self.term, p)) for p in materialize(self.term, cap).elements]


def embed_term(t: Term) -> TermEmbedding:
    return TermEmbedding(t)


@dataclass(frozen=True)
class LinearOrder:
    """A finite linear order; ``elements`` are term positions listed in order."""

    elements: tuple

    def __len__(self):
        return len(self.elements)

    def index(self, pos) -> int:
        return self.elements.index(pos)


def _size(t: Term) -> int:
    if isinstance(t, Atom):
        return 1
    if isinstance(t, Prod):
        return _size(t.base) * t.beta
    return _size(t.left) + _size(t.right)


def _positions(t: Term) -> Iterator:
    if isinstance(t, Atom):
        yield ()
    elif isinstance(t, Prod):
        copies = range(t.beta - 1, -1, -1) if t.reverse else range(t.beta)
        for g in copies:
            for p in _positions(t.base):
                yield (g, p)
    else:
        for p in _positions(t.left):
            yield (0, p)
        for p in _positions(t.right):
            yield (1, p)


def materialize(t: Term, cap: int = MATERIALIZE_CAP) -> LinearOrder:
    if not is_finite_term(t):
        raise TermError("cannot materialize a term with an infinite product")
    n = _size(t)
    if n > cap:
        raise TermError(f"term denotes {n} points, cap is {cap}")
    return LinearOrder(tuple(_positions(t)))


def order_violation(t: Term, cap: int = MATERIALIZE_CAP):
    """First pair ``p < q`` of positions whose images are not <^3-increasing, or ``None``."""
    emb = embed_term(t)
    pts = [(p, emb[p]) for p in materialize(t, cap).elements]
    for (p, a), (q, b) in combinations(pts, 2):
        if cmp_lex3(a, b) >= 0:
            return p, q
    return None


def check_order_embedding(t: Term, cap: int = MATERIALIZE_CAP) -> bool:
    """Exact check over all pairs of the materialized order."""
    return order_violation(t, cap) is None


def all_terms(depth: int, betas=range(1, 5)) -> list[Term]:
    """Every term of depth at most ``depth`` (atom = 1) with product sizes from ``betas``."""
    everything: list = [Atom()]
    for _ in range(depth - 1):
        prev = list(everything)
        new = [Prod(b, beta, rev) for b in prev for beta in betas for rev in (False, True)]
        new += [Sum(l, r) for l in prev for r in prev]
        seen = set(everything)
        everything += [x for x in new if x not in seen]
    return everything


# -- term syntax ---------------------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Atom):
        return "atom"
    if isinstance(t, Prod):
        return f"prod({format_term(t.base)},{ord_format(t.beta)},{'rev' if t.reverse else 'fwd'})"
    return f"sum({format_term(t.left)},{format_term(t.right)})"


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_term(text: str) -> Term:
    """Parse ``atom``, ``prod(TERM,BETA,fwd|rev)`` or ``sum(TERM,TERM)``."""
    s = text.strip()
    if s == "atom":
        return Atom()
    m = re.fullmatch(r"(prod|sum)\s*\((.*)\)", s, re.S)
    if not m:
        raise TermError(f"cannot parse term {text!r}")
    args = _split_args(m.group(2))
    if m.group(1) == "sum":
        if len(args) != 2:
            raise TermError(f"sum takes two terms: {text!r}")
        return Sum(parse_term(args[0]), parse_term(args[1]))
    if len(args) != 3 or args[2] not in ("fwd", "rev"):
        raise TermError(f"prod takes (TERM,BETA,fwd|rev): {text!r}")
    try:
        beta = ord_parse(args[1])
    except ValueError as e:
        raise TermError(str(e)) from None
    return Prod(parse_term(args[0]), beta, args[2] == "rev")
