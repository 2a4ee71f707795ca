"""Tree embeddings: maps preserving level, the prefix relation and sibling order."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .dstree import DecSeq, Tree, format_seq
from .orders import lt_star

__all__ = [
    "Embedding",
    "EmbeddingViolation",
    "BudgetExceeded",
    "embedding_violation",
    "validate_embedding",
    "enum_embeddings",
    "count_embeddings",
    "DEFAULT_PATTERN_CAP",
    "DEFAULT_TARGET_CAP",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_PATTERN_CAP = 64
DEFAULT_TARGET_CAP = 4096
DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """A search or enumeration hit its configured budget before finishing."""


@dataclass(frozen=True)
class Embedding:
    mapping: Mapping[DecSeq, DecSeq]

    def __call__(self, seq: DecSeq) -> DecSeq:
        return self.mapping[seq]

    def image(self) -> Tree:
        return Tree(self.mapping.values(), _trusted=True)

    def apply(self, u: tuple) -> tuple:
        return tuple(self.mapping[x] for x in u)

    def items(self):
        """Pairs ``(source, image)`` in the canonical order of the sources."""
        return [(s, self.mapping[s]) for s in sorted(self.mapping, key=lambda s: (len(s), s))]


@dataclass(frozen=True)
class EmbeddingViolation:
    clause: str
    nodes: tuple = field(default=())

    def __str__(self):
        return f"{self.clause}: " + " / ".join(format_seq(n) for n in self.nodes)


def embedding_violation(f: Embedding | Mapping, s: Tree, t: Tree) -> EmbeddingViolation | None:
    """First failed clause of the embedding conditions, or ``None``.

    Checks totality, image inside ``t``, level, the prefix relation (via
    parents) and, for siblings with smaller/larger last entry in ``s``, that
    the images are <*-increasing.  That sibling check suffices once level and
    prefix are known to be preserved.
    """
    m = f.mapping if isinstance(f, Embedding) else f
    for rho in s.listing():
        if rho not in m:
            return EmbeddingViolation("not total", (rho,))
        img = m[rho]
        if img not in t:
            return EmbeddingViolation("image outside target", (rho, img))
        if len(img) != len(rho):
            return EmbeddingViolation("level not preserved", (rho, img))
        if rho and m[rho[:-1]] != img[:-1]:
            return EmbeddingViolation("prefix not preserved", (rho[:-1], rho))
    for eta in s.listing():
        kids = s.children(eta)
        for a, b in zip(kids, kids[1:]):
            if not lt_star(m[a], m[b]):
                return EmbeddingViolation("sibling order not preserved", (a, b))
    return None


def validate_embedding(f: Embedding | Mapping, s: Tree, t: Tree) -> bool:
    return embedding_violation(f, s, t) is None


def _heights(t: Tree) -> dict:
    h = {}
    for seq in reversed(t.listing()):
        h[seq] = 1 + max((h[c] for c in t.children(seq)), default=-1)
    return h


def enum_embeddings(
    s: Tree,
    t: Tree,
    *,
    pattern_cap: int = DEFAULT_PATTERN_CAP,
    target_cap: int = DEFAULT_TARGET_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Iterator[Embedding]:
    """Every embedding of ``s`` into ``t``, each exactly once.

    Pattern nodes are assigned in canonical (length, <^2) order and image
    candidates are tried in the same order, so the stream order is canonical.
    Raises :class:`BudgetExceeded` once more than ``node_budget`` partial
    assignments have been tried.
    """
    if len(s) > pattern_cap:
        raise BudgetExceeded(f"pattern has {len(s)} nodes, cap is {pattern_cap}")
    if len(t) > target_cap:
        raise BudgetExceeded(f"target has {len(t)} nodes, cap is {target_cap}")
    order = s.listing()
    hs, ht = _heights(s), _heights(t)
    nkids_s = {x: len(s.children(x)) for x in order}
    # previous sibling (smaller last entry) of each pattern node, if any
    prev_sib = {}
    for x in order:
        kids = s.children(x)
        for a, b in zip(kids, kids[1:]):
            prev_sib[b] = a
    cand_ok = {}
    for x in order:
        cand_ok[x] = lambda y, x=x: ht[y] >= hs[x] and len(t.children(y)) >= nkids_s[x]

    mapping: dict = {}
    steps = 0

    def rec(i: int):
        nonlocal steps
        if i == len(order):
            yield Embedding(dict(mapping))
            return
        x = order[i]
        if x:
            cands = t.children(mapping[x[:-1]])
            p = prev_sib.get(x)
            floor = mapping[p][-1] if p is not None else None
        else:
            cands = ((),) if () in t else ()
            floor = None
        for y in cands:
            if floor is not None and not floor < y[-1]:
                continue
            steps += 1
            if steps > node_budget:
                raise BudgetExceeded(f"embedding search exceeded {node_budget} steps")
            if not cand_ok[x](y):
                continue
            mapping[x] = y
            yield from rec(i + 1)
            del mapping[x]

    yield from rec(0)


def count_embeddings(s: Tree, t: Tree, **kw) -> int:
    return sum(1 for _ in enum_embeddings(s, t, **kw))
