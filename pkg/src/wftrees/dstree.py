"""Decreasing sequences of ordinals and finite trees of them.

A decreasing sequence is a plain ``tuple`` of ordinals (``int`` or
:class:`~wftrees.ordinal.Ordinal`) with strictly decreasing entries.  A
:class:`Tree` is a finite, non-empty, prefix-closed set of such tuples.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .ordinal import Ord, OrdinalSyntaxError, is_ordinal, ord_format, ord_parse

__all__ = [
    "DecSeq",
    "TreeError",
    "Tree",
    "decseq",
    "is_decreasing",
    "is_initial",
    "is_proper_initial",
    "seq_meet",
    "in_ds",
    "graft",
    "enum_ds",
    "validate_tree",
    "subtrees",
    "parse_seq",
    "format_seq",
    "parse_tree",
    "format_tree",
    "read_tree",
    "ENUM_DS_CAP",
]

DecSeq = tuple
ENUM_DS_CAP = 20


class TreeError(ValueError):
    pass


def is_decreasing(seq: Iterable) -> bool:
    seq = tuple(seq)
    if not all(is_ordinal(x) for x in seq):
        return False
    return all(b < a for a, b in zip(seq, seq[1:]))


def decseq(entries: Iterable[Ord] = ()) -> DecSeq:
    seq = tuple(entries)
    if not is_decreasing(seq):
        raise TreeError(f"{format_seq(seq)} is not a decreasing sequence of ordinals")
    return seq


def is_initial(a: DecSeq, b: DecSeq) -> bool:
    """``a`` is an initial segment of ``b`` (possibly equal)."""
    return len(a) <= len(b) and b[: len(a)] == a


def is_proper_initial(a: DecSeq, b: DecSeq) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def seq_meet(a: DecSeq, b: DecSeq) -> DecSeq:
    """Longest common prefix of ``a`` and ``b``."""
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return a[:i]


def in_ds(seq: DecSeq, alpha: Ord) -> bool:
    """Membership in ds(alpha): decreasing with every entry below ``alpha``."""
    return is_decreasing(seq) and all(x < alpha for x in seq)


def _listing_key(seq: DecSeq):
    # Same-length sequences compare under <^2 exactly as plain tuples do.
    return (len(seq), seq)


class Tree:
    """A finite tree of decreasing sequences.

    Construction validates the invariants (see :func:`validate_tree`).
    Iteration follows the canonical listing: by length, then <^2.
    """

    __slots__ = ("nodes", "_listing", "_children", "_hash")

    def __init__(self, nodes: Iterable[DecSeq], *, _trusted: bool = False):
        nodes = frozenset(tuple(n) for n in nodes)
        if not _trusted:
            _check_tree(nodes)
        self.nodes = nodes
        self._listing = None
        self._children = None
        self._hash = None

    def __contains__(self, seq) -> bool:
        return tuple(seq) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[DecSeq]:
        return iter(self.listing())

    def __eq__(self, other):
        if isinstance(other, Tree):
            return self.nodes == other.nodes
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.nodes)
        return self._hash

    def __repr__(self):
        return "Tree({" + ", ".join(format_seq(s) for s in self.listing()) + "})"

    def listing(self) -> tuple:
        if self._listing is None:
            self._listing = tuple(sorted(self.nodes, key=_listing_key))
        return self._listing

    def children(self, seq: DecSeq) -> tuple:
        """Immediate successors of ``seq``, in increasing order of the last entry."""
        if self._children is None:
            ch: dict = {s: [] for s in self.nodes}
            for s in self.listing():
                if s:
                    ch[s[:-1]].append(s)
            self._children = {k: tuple(v) for k, v in ch.items()}
        return self._children.get(tuple(seq), ())

    def height(self) -> int:
        return max(len(s) for s in self.nodes)

    def level(self, n: int) -> tuple:
        return tuple(s for s in self.listing() if len(s) == n)

    def level_sizes(self) -> list[int]:
        sizes = [0] * (self.height() + 1)
        for s in self.nodes:
            sizes[len(s)] += 1
        return sizes


def _check_tree(nodes: frozenset) -> None:
    if not nodes:
        raise TreeError("a tree must be non-empty")
    for s in sorted(nodes, key=lambda s: (len(s), tuple(map(_sortable, s)))):
        if not is_decreasing(s):
            raise TreeError(f"{format_seq(s)} is not a decreasing sequence")
        for i in range(len(s)):
            if s[:i] not in nodes:
                raise TreeError(f"prefix {format_seq(s[:i])} of {format_seq(s)} missing")


def _sortable(x):
    # Nodes that fail validation may hold junk entries; keep sorting total.
    return (0, x) if is_ordinal(x) else (1, repr(x))


def validate_tree(nodes: Iterable[DecSeq]) -> Tree:
    """Return ``nodes`` as a :class:`Tree` or raise :class:`TreeError`.

    Nodes are scanned by length, so the reported problem is the shortest one.
    """
    return Tree(nodes)


def graft(eta: DecSeq, t: Tree) -> Tree:
    """The tree of prefixes of ``eta`` together with ``eta`` prepended to every node of ``t``."""
    eta = decseq(eta)
    if not eta:
        raise TreeError("graft needs a non-empty stem")
    last = eta[-1]
    for nu in t.level(1):
        if not nu[0] < last:
            raise TreeError(
                f"cannot graft onto {format_seq(eta)}: first entry {ord_format(nu[0])} "
                f"of {format_seq(nu)} is not below {ord_format(last)}"
            )
    nodes = {eta[:i] for i in range(len(eta))}
    nodes.update(eta + nu for nu in t.nodes)
    return Tree(nodes, _trusted=True)


def enum_ds(n: int, cap: int = ENUM_DS_CAP) -> Tree:
    """All decreasing sequences over ``{0, ..., n-1}``; ``2**n`` nodes."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n > cap:
        raise TreeError(f"enum_ds({n}) exceeds the cap of {cap}")
    values = range(n - 1, -1, -1)
    nodes = [c for k in range(n + 1) for c in combinations(values, k)]
    return Tree(nodes, _trusted=True)


def subtrees(t: Tree, max_nodes: int | None = None) -> Iterator[Tree]:
    """Every subtree of ``t`` (prefix-closed subset containing the root).

    Optionally limited to at most ``max_nodes`` nodes.  Order is deterministic.
    """
    limit = len(t) if max_nodes is None else max_nodes
    if limit < 1:
        return

    def grow(frontier: tuple, chosen: list, budget: int):
        # frontier: candidate nodes whose parent is chosen, in canonical order
        if not frontier:
            yield chosen
            return
        head, rest = frontier[0], frontier[1:]
        yield from grow(rest, chosen, budget)
        if budget > 0:
            chosen.append(head)
            yield from grow(rest + t.children(head), chosen, budget - 1)
            chosen.pop()

    for nodes in grow(t.children(()), [()], limit - 1):
        yield Tree(nodes, _trusted=True)


# -- text format -------------------------------------------------------------

def format_seq(seq: DecSeq) -> str:
    if not seq:
        return "-"
    return ",".join(ord_format(x) if is_ordinal(x) else repr(x) for x in seq)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_seq(text: str) -> DecSeq:
    text = text.strip()
    if text == "-":
        return ()
    if not text:
        raise TreeError("empty sequence text (use '-' for the empty sequence)")
    try:
        return decseq(ord_parse(p) for p in _split_top(text, ","))
    except OrdinalSyntaxError as e:
        raise TreeError(f"bad sequence {text!r}: {e}") from None


def parse_tree(text: str) -> Tree:
    nodes = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nodes.append(parse_seq(line))
        except TreeError as e:
            raise TreeError(f"line {lineno}: {e}") from None
    return validate_tree(nodes)


def format_tree(t: Tree) -> str:
    return "".join(format_seq(s) + "\n" for s in t.listing())


def read_tree(path) -> Tree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())
