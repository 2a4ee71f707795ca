"""Similarity of finite tuples of sequences, colourings, and uniformity checks.

Two equally long lists of sequences are similar when their entries have the
same lengths, their pairwise meets have the same lengths, and they are
ordered the same way by <^2.  :class:`SimCode` packs exactly those data, so
similarity is equality of codes.

Colour tuples are always listed <^2-increasing (:func:`as_tuple`).  A tuple
space of a tree is enumerated as ``itertools.combinations`` of the tree's
nodes in <^2 order; that enumeration order is what "first violation" means.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .dstree import DecSeq, Tree, TreeError, format_seq, parse_seq
from .orders import cmp_lex2, lex2_key

__all__ = [
    "SimCode",
    "Colouring",
    "ColouringError",
    "UniformityViolation",
    "ClassRegistry",
    "as_tuple",
    "is_tuple",
    "sim_code",
    "is_similar",
    "end_ext_similar",
    "lex2_listing",
    "tuples_of",
    "end_uniform_key",
    "end_uniform_groups",
    "uniformity_violation",
    "is_uniform",
    "end_uniformity_violation",
    "is_n_end_uniform",
    "is_end_uniform",
    "class_index",
    "constant_colouring",
    "length_colouring",
    "class_colouring",
    "random_colouring",
    "colouring_from_function",
    "parse_colouring",
    "format_colouring",
    "read_colouring",
    "format_tuple",
]


class ColouringError(LookupError):
    pass


# -- tuples and codes ----------------------------------------------------------

def is_tuple(items: Iterable[DecSeq]) -> bool:
    items = tuple(items)
    return all(cmp_lex2(a, b) < 0 for a, b in zip(items, items[1:]))


def as_tuple(items: Iterable[DecSeq]) -> tuple:
    """Validate that ``items`` are strictly <^2-increasing and return them as a tuple."""
    items = tuple(tuple(x) for x in items)
    if not is_tuple(items):
        raise ValueError(f"{format_tuple(items)} is not <^2-increasing")
    return items


@dataclass(frozen=True, order=True)
class SimCode:
    n: int
    lengths: tuple
    meets: tuple  # n x n, row-major tuple of rows
    order: tuple  # order[i] = position of item i in <^2 order

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lengths": list(self.lengths),
            "meets": [list(r) for r in self.meets],
            "order": list(self.order),
        }


def _meet_len(a: DecSeq, b: DecSeq) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def sim_code(u: Iterable[DecSeq]) -> SimCode:
    u = tuple(tuple(x) for x in u)
    if len(set(u)) != len(u):
        raise ValueError(f"duplicate items in {format_tuple(u)}")
    n = len(u)
    meets = tuple(tuple(_meet_len(a, b) for b in u) for a in u)
    ranked = sorted(range(n), key=lambda i: lex2_key(u[i]))
    order = [0] * n
    for pos, i in enumerate(ranked):
        order[i] = pos
    return SimCode(n, tuple(len(x) for x in u), meets, tuple(order))


def is_similar(u: Iterable[DecSeq], v: Iterable[DecSeq]) -> bool:
    return sim_code(u) == sim_code(v)


def end_ext_similar(prefix: Iterable[DecSeq], r1: DecSeq, r2: DecSeq) -> bool:
    """Sufficient test that ``prefix + (r1,)`` and ``prefix + (r2,)`` are similar.

    Both extensions must lie <^2-above the prefix.  Only the lengths of the
    new items and their meets with the last prefix item are compared.
    """
    prefix = as_tuple(prefix)
    r1, r2 = tuple(r1), tuple(r2)
    if prefix:
        last = prefix[-1]
        for r in (r1, r2):
            if cmp_lex2(last, r) >= 0:
                raise ValueError(f"{format_seq(r)} is not <^2-above {format_seq(last)}")
    if len(r1) != len(r2):
        return False
    return not prefix or _meet_len(r1, prefix[-1]) == _meet_len(r2, prefix[-1])


def format_tuple(u: Iterable[DecSeq]) -> str:
    return " ; ".join(format_seq(x) for x in u)


# -- colourings ------------------------------------------------------------------

@dataclass
class Colouring:
    """A finite colouring of tuples with ``num_colours`` colours.

    ``assignment`` maps <^2-increasing tuples of sequences to colours in
    ``range(num_colours)``; every key has a size in ``arities``.
    """

    num_colours: int
    arities: frozenset
    assignment: dict = field(default_factory=dict)

    def __post_init__(self):
        self.arities = frozenset(self.arities)
        if self.num_colours < 1:
            raise ValueError("a colouring needs at least one colour")
        for u, col in self.assignment.items():
            if len(u) not in self.arities:
                raise ValueError(f"tuple {format_tuple(u)} has size {len(u)} outside arities")
            if not 0 <= col < self.num_colours:
                raise ValueError(f"colour {col} out of range for mu={self.num_colours}")

    def __call__(self, u: tuple) -> int:
        try:
            return self.assignment[u]
        except KeyError:
            raise ColouringError(f"colouring undefined on ({format_tuple(u)})") from None

    def restrict(self, t: Tree) -> "Colouring":
        return Colouring(
            self.num_colours,
            self.arities,
            {u: c for u, c in self.assignment.items() if all(x in t for x in u)},
        )

    def check_total(self, t: Tree) -> None:
        for k in sorted(self.arities):
            for u in tuples_of(t, k):
                if u not in self.assignment:
                    raise ColouringError(f"colouring undefined on ({format_tuple(u)})")


def lex2_listing(t: Tree) -> tuple:
    return tuple(sorted(t.nodes, key=lex2_key))


def tuples_of(t: Tree | Iterable[DecSeq], size: int) -> Iterator[tuple]:
    """All <^2-increasing ``size``-tuples of nodes, in canonical order."""
    listing = lex2_listing(t) if isinstance(t, Tree) else tuple(t)
    return combinations(listing, size)


def colouring_from_function(t: Tree, arities: Iterable[int], mu: int, fn: Callable[[tuple], int]) -> Colouring:
    arities = frozenset(arities)
    listing = lex2_listing(t)
    table = {u: fn(u) for k in sorted(arities) for u in combinations(listing, k)}
    return Colouring(mu, arities, table)


def constant_colouring(t: Tree, arities: Iterable[int], colour: int = 0, mu: int | None = None) -> Colouring:
    return colouring_from_function(t, arities, mu or colour + 1, lambda u: colour)


def length_colouring(t: Tree, arities: Iterable[int], mu: int, fn: Callable[[tuple], int] | None = None) -> Colouring:
    """Colour determined by the tuple of member lengths (default: total length mod ``mu``)."""
    if fn is None:
        def fn(lengths):
            return sum(lengths) % mu
    return colouring_from_function(t, arities, mu, lambda u: fn(tuple(len(x) for x in u)))


def class_colouring(t: Tree, arities: Iterable[int], registry: "ClassRegistry") -> Colouring:
    return colouring_from_function(t, arities, max(len(registry), 1), lambda u: registry.index(sim_code(u)))


def random_colouring(t: Tree, arities: Iterable[int], mu: int, seed: int) -> Colouring:
    rng = random.Random(seed)
    return colouring_from_function(t, arities, mu, lambda u: rng.randrange(mu))


# -- uniformity checks -------------------------------------------------------------

@dataclass(frozen=True)
class UniformityViolation:
    first: tuple
    second: tuple
    first_colour: int
    second_colour: int

    def __str__(self):
        return (
            f"({format_tuple(self.first)}) -> {self.first_colour} but "
            f"({format_tuple(self.second)}) -> {self.second_colour}"
        )

    def to_json(self) -> dict:
        return {
            "first": [format_seq(x) for x in self.first],
            "second": [format_seq(x) for x in self.second],
            "first_colour": self.first_colour,
            "second_colour": self.second_colour,
        }


def end_uniform_key(u: tuple, n: int):
    """Tuples with equal keys must share a colour under n-end-uniformity."""
    k = len(u) - n
    return (u[:k], sim_code(u))


def _first_conflict(groups_of: Iterator[tuple], c: Colouring) -> UniformityViolation | None:
    seen: dict = {}
    for key, u in groups_of:
        col = c(u)
        if key in seen:
            v, vc = seen[key]
            if vc != col:
                return UniformityViolation(v, u, vc, col)
        else:
            seen[key] = (u, col)
    return None


def uniformity_violation(tp: Tree, c: Colouring) -> UniformityViolation | None:
    """First pair of similar tuples of ``tp`` with different colours, or ``None``."""
    listing = lex2_listing(tp)

    def keyed():
        for k in sorted(c.arities):
            for u in combinations(listing, k):
                yield sim_code(u), u

    return _first_conflict(keyed(), c)


def is_uniform(tp: Tree, c: Colouring) -> bool:
    return uniformity_violation(tp, c) is None


def end_uniform_groups(tp: Tree | Iterable[DecSeq], arities: Iterable[int], n: int) -> list[list[tuple]]:
    """Classes of tuples forced to share a colour by n-end-uniformity.

    A class holds the tuples of one size that agree on all but their last
    ``n`` members and are similar.  Sizes below ``n`` are unconstrained and
    left out; singleton classes are kept so the result partitions the
    constrained tuples.
    """
    listing = lex2_listing(tp) if isinstance(tp, Tree) else tuple(tp)
    groups: dict = {}
    for m in sorted(arities):
        if m < n:
            continue
        for u in combinations(listing, m):
            groups.setdefault((m, end_uniform_key(u, n)), []).append(u)
    return list(groups.values())


def end_uniformity_violation(tp: Tree, c: Colouring, n: int = 1) -> UniformityViolation | None:
    if n < 1:
        raise ValueError("n must be positive")
    listing = lex2_listing(tp)

    def keyed():
        for m in sorted(c.arities):
            if m < n:
                continue
            for u in combinations(listing, m):
                yield (m, end_uniform_key(u, n)), u

    return _first_conflict(keyed(), c)


def is_n_end_uniform(tp: Tree, c: Colouring, n: int = 1) -> bool:
    return end_uniformity_violation(tp, c, n) is None


def is_end_uniform(tp: Tree, c: Colouring) -> bool:
    return is_n_end_uniform(tp, c, 1)


# -- class registry --------------------------------------------------------------

class ClassRegistry:
    """A fixed, canonically ordered list of similarity classes.

    Codes are sorted by (size, lengths, meets row by row, order permutation),
    and a class's index is its position in that list.
    """

    def __init__(self, codes: Iterable[SimCode]):
        self.codes = tuple(sorted(set(codes)))
        self._index = {code: i for i, code in enumerate(self.codes)}

    @classmethod
    def from_tree(cls, t: Tree, max_size: int, min_size: int = 0) -> "ClassRegistry":
        """All classes realised by tuples of ``t`` with ``min_size..max_size`` members."""
        listing = lex2_listing(t)
        return cls(sim_code(u) for k in range(min_size, max_size + 1) for u in combinations(listing, k))

    def __len__(self):
        return len(self.codes)

    def __contains__(self, code):
        return code in self._index

    def index(self, code: SimCode) -> int:
        try:
            return self._index[code]
        except KeyError:
            raise KeyError(f"similarity class {code} is not in the registry") from None


def class_index(reg: ClassRegistry, code: SimCode) -> int:
    return reg.index(code)


# -- colouring file format --------------------------------------------------------------

def parse_colouring(text: str) -> Colouring:
    """Parse ``mu=<n>`` then lines ``SEQ ; SEQ ; ... -> COLOUR``.

    An optional ``arities=1,2`` header declares sizes that have no lines;
    otherwise arities are the sizes that occur.  An empty left-hand side
    denotes the empty tuple.
    """
    mu = None
    arities: set = set()
    declared = None
    table: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("mu="):
            mu = int(line[3:])
            continue
        if line.startswith("arities="):
            declared = {int(x) for x in line[8:].split(",") if x.strip()}
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected 'SEQ ; ... -> COLOUR'")
        lhs, rhs = line.rsplit("->", 1)
        try:
            items = [parse_seq(p) for p in lhs.split(";")] if lhs.strip() else []
            u = as_tuple(items)
            colour = int(rhs)
        except (TreeError, ValueError) as e:
            raise ValueError(f"line {lineno}: {e}") from None
        if u in table:
            raise ValueError(f"line {lineno}: tuple ({format_tuple(u)}) coloured twice")
        table[u] = colour
        arities.add(len(u))
    if mu is None:
        raise ValueError("missing 'mu=<natural>' header")
    if declared is not None:
        if not arities <= declared:
            raise ValueError(f"tuple sizes {sorted(arities - declared)} not in declared arities")
        arities = declared
    return Colouring(mu, frozenset(arities), table)


def format_colouring(c: Colouring) -> str:
    lines = [f"mu={c.num_colours}", "arities=" + ",".join(map(str, sorted(c.arities)))]
    keyed = sorted(c.assignment.items(), key=lambda kv: (len(kv[0]), [lex2_key(x) for x in kv[0]]))
    for u, col in keyed:
        lhs = format_tuple(u)
        lines.append(f"{lhs} -> {col}" if lhs else f"-> {col}")
    return "\n".join(lines) + "\n"


def read_colouring(path) -> Colouring:
    with open(path, encoding="utf-8") as fh:
        return parse_colouring(fh.read())
