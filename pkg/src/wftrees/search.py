"""End-uniform copy search, exhaustive partition verification, and the
colouring reduction that lifts n-end-uniformity to (n+1)-end-uniformity.

Embeddings preserve levels, meets and <^2, so they carry similarity classes
and shared prefixes over unchanged.  The searches therefore compute the
forced-equal tuple classes once on the pattern and test each embedding by
looking up colours of mapped tuples.  Every witness is then re-checked
directly on its image.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .dstree import Tree, format_seq
from .embedding import (
    DEFAULT_NODE_BUDGET,
    BudgetExceeded,
    Embedding,
    enum_embeddings,
    validate_embedding,
)
from .orders import lex2_key
from .similarity import (
    ClassRegistry,
    Colouring,
    end_uniform_groups,
    end_uniformity_violation,
    format_tuple,
    lex2_listing,
    sim_code,
)

__all__ = [
    "ABSENT",
    "DEFAULT_COLOURING_BUDGET",
    "NotEndUniformError",
    "Witness",
    "VerifyReport",
    "find_n_end_uniform_copy",
    "verify_partition_exhaustive",
    "transform_colouring_d",
    "Pairing",
    "pair_f",
    "composed_colouring",
    "lift_holds",
]

ABSENT = -1
DEFAULT_COLOURING_BUDGET = 2 ** 24


class NotEndUniformError(ValueError):
    def __init__(self, first: tuple, second: tuple, class_index: int, colours: tuple):
        super().__init__(
            f"not end-uniform: ({format_tuple(first)}) and ({format_tuple(second)}) "
            f"both extend into class {class_index} with colours {colours[0]} != {colours[1]}"
        )
        self.first = first
        self.second = second
        self.class_index = class_index
        self.colours = colours


def _seqs(u) -> list[str]:
    return [format_seq(x) for x in u]


@dataclass(frozen=True)
class Witness:
    embedding: Embedding
    n: int
    certificate: tuple  # the forced-equal classes of image tuples that were checked

    @property
    def checked_property(self) -> str:
        return f"END_UNIFORM({self.n})"

    def image(self) -> Tree:
        return self.embedding.image()

    def to_json(self) -> dict:
        return {
            "checked_property": self.checked_property,
            "embedding": [[format_seq(a), format_seq(b)] for a, b in self.embedding.items()],
            "certificate": [[_seqs(u) for u in group] for group in self.certificate],
        }


@dataclass(frozen=True)
class VerifyReport:
    holds: bool
    counterexample: Colouring | None
    colourings_checked: int
    colourings_total: int

    def to_json(self) -> dict:
        cx = None
        if self.counterexample is not None:
            c = self.counterexample
            cx = {
                "mu": c.num_colours,
                "arities": sorted(c.arities),
                "assignment": [
                    [_seqs(u), col]
                    for u, col in sorted(c.assignment.items(), key=lambda kv: _tuple_pos(kv[0]))
                ],
            }
        return {
            "holds": self.holds,
            "colourings_checked": self.colourings_checked,
            "colourings_total": self.colourings_total,
            "counterexample": cx,
        }


def _tuple_pos(u):
    return (len(u), [lex2_key(x) for x in u])


def _pattern_constraints(s: Tree, arities: Iterable[int], n: int) -> list[list[tuple]]:
    return [g for g in end_uniform_groups(s, arities, n) if len(g) > 1]


def find_n_end_uniform_copy(
    t: Tree,
    s: Tree,
    c: Colouring,
    n: int = 1,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Witness | None:
    """First embedding of ``s`` into ``t`` (canonical order) whose image is n-end-uniform for ``c``.

    Returns ``None`` when no embedding qualifies.  Raises
    :class:`~wftrees.embedding.BudgetExceeded` if the embedding search runs out
    of budget, and :class:`~wftrees.similarity.ColouringError` if ``c`` is
    undefined on an image tuple it is asked about.
    """
    if n < 1:
        raise ValueError("n must be positive")
    groups = _pattern_constraints(s, c.arities, n)
    for f in enum_embeddings(s, t, node_budget=node_budget):
        m = f.mapping
        ok = True
        for g in groups:
            first = c(tuple(m[x] for x in g[0]))
            if any(c(tuple(m[x] for x in u)) != first for u in g[1:]):
                ok = False
                break
        if not ok:
            continue
        image = f.image()
        # independent re-check on the image itself
        if not validate_embedding(f, s, t) or end_uniformity_violation(image, c.restrict(image), n):
            raise AssertionError("witness failed re-verification on its image")
        cert = tuple(
            tuple(tuple(m[x] for x in u) for u in g) for g in groups
        )
        return Witness(f, n, cert)
    return None


def _decode(index: int, mu: int, size: int) -> list[int]:
    # first tuple is the most significant digit: product order
    digits = [0] * size
    for i in range(size - 1, -1, -1):
        index, digits[i] = divmod(index, mu)
    return digits


def verify_partition_exhaustive(
    t: Tree,
    s: Tree,
    mu: int,
    arity: int | Iterable[int],
    n: int = 1,
    *,
    budget: int = DEFAULT_COLOURING_BUDGET,
    node_budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> VerifyReport:
    """Check every ``mu``-colouring of the ``arity``-tuples of ``t`` for an n-end-uniform copy of ``s``.

    Colourings are visited as colour vectors over the canonical tuple order,
    in lexicographic order, and the first failing one is reported.  More than
    ``budget`` colourings is refused with :class:`BudgetExceeded`; nothing is
    sampled.  ``threads`` splits the scan into contiguous chunks; the result
    does not depend on it.

    ``arity`` may be a set of sizes; the colour domain is then all tuples of
    those sizes, smallest size first.
    """
    arities = sorted({arity} if isinstance(arity, int) else set(arity))
    if mu < 1 or not arities or arities[0] < 0 or n < 1:
        raise ValueError("need mu >= 1, arities >= 0, n >= 1")
    listing = lex2_listing(t)
    tuples = [u for k in arities for u in combinations(listing, k)]
    total = mu ** len(tuples)
    if total > budget:
        raise BudgetExceeded(f"{mu}^{len(tuples)} colourings exceed the budget of {budget}")
    pos = {u: i for i, u in enumerate(tuples)}
    groups = _pattern_constraints(s, arities, n)
    # per embedding: index pairs that must receive equal colours
    per_embedding = []
    for f in enum_embeddings(s, t, node_budget=node_budget):
        pairs = []
        for g in groups:
            idx = [pos[tuple(f.mapping[x] for x in u)] for u in g]
            pairs.extend((idx[0], j) for j in idx[1:])
        per_embedding.append(tuple(pairs))
    per_embedding = list(dict.fromkeys(per_embedding))

    def good(vec) -> bool:
        return any(all(vec[a] == vec[b] for a, b in pairs) for pairs in per_embedding)

    found = [total]  # smallest failing index seen by any chunk

    def scan(lo: int, hi: int) -> int | None:
        for idx in range(lo, hi):
            if found[0] < lo:
                return None
            if not good(_decode(idx, mu, len(tuples))):
                found[0] = min(found[0], idx)
                return idx
        return None

    threads = max(1, threads)
    if threads == 1:
        bad = scan(0, total)
    else:
        chunk = max(1, -(-total // (threads * 4)))
        bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda b: scan(*b), bounds))
        bad = next((r for r in results if r is not None), None)

    if bad is None:
        return VerifyReport(True, None, total, total)
    vec = _decode(bad, mu, len(tuples))
    cx = Colouring(mu, frozenset(arities), dict(zip(tuples, vec)))
    if find_n_end_uniform_copy(t, s, cx, n, node_budget=node_budget) is not None:
        raise AssertionError("counterexample failed re-verification")
    return VerifyReport(False, cx, bad + 1, total)


# -- the reduction ------------------------------------------------------------------

def transform_colouring_d(tp: Tree, c: Colouring, reg: ClassRegistry) -> dict:
    """For each tuple, the colour of its one-point extensions by similarity class.

    Maps every tuple ``r`` of ``tp`` whose size is one less than an arity of
    ``c`` to a dict ``{class index m: colour}``: the colour of ``r + (eta,)``
    for any ``eta`` of ``tp`` above ``r`` in <^2 with ``r + (eta,)`` in class
    ``m``.  Classes not realised are absent (read them as :data:`ABSENT`).
    End-uniformity of ``c`` on ``tp`` makes the value unique; a clash raises
    :class:`NotEndUniformError`.
    """
    listing = lex2_listing(tp)
    where = {x: i for i, x in enumerate(listing)}
    out: dict = {}
    witness: dict = {}
    for a in sorted(c.arities):
        if a < 1:
            continue
        for r in combinations(listing, a - 1):
            d = out.setdefault(r, {})
            start = where[r[-1]] + 1 if r else 0
            for eta in listing[start:]:
                u = r + (eta,)
                m = reg.index(sim_code(u))
                col = c(u)
                if m in d and d[m] != col:
                    raise NotEndUniformError(witness[(r, m)], u, m, (d[m], col))
                if m not in d:
                    d[m] = col
                    witness[(r, m)] = u
    return out


class Pairing:
    """Injective numbering of partial maps ``class index -> colour``.

    Each distinct map (absent entries omitted) gets the next natural number
    the first time it is seen; the empty map is always 0.
    """

    def __init__(self, reg: ClassRegistry):
        self.reg = reg
        self._codes: dict = {(): 0}

    def key(self, partial: dict) -> tuple:
        for m in partial:
            if not 0 <= m < len(self.reg):
                raise KeyError(f"class index {m} is not in the registry")
        return tuple(sorted((m, v) for m, v in partial.items() if v != ABSENT))

    def __call__(self, partial: dict) -> int:
        k = self.key(partial)
        if k not in self._codes:
            self._codes[k] = len(self._codes)
        return self._codes[k]

    def __len__(self):
        return len(self._codes)


def pair_f(reg: ClassRegistry | Pairing, partial: dict) -> int:
    """Code of ``partial``.  Given a registry, uses one numbering shared by all calls with it."""
    if isinstance(reg, ClassRegistry):
        pairing = reg.__dict__.get("_pairing")
        if pairing is None:
            pairing = reg.__dict__["_pairing"] = Pairing(reg)
        return pairing(partial)
    return reg(partial)


def composed_colouring(tp: Tree, c: Colouring, reg: ClassRegistry, pairing: Pairing | None = None) -> Colouring:
    """The colouring ``pairing(d(r))`` on the tuples where ``d`` is defined."""
    pairing = pairing or Pairing(reg)
    d = transform_colouring_d(tp, c, reg)
    table = {r: pairing(v) for r, v in d.items()}
    return Colouring(max(len(pairing), 1), frozenset(len(r) for r in d) or frozenset({0}), table)


def lift_holds(sub: Tree, c: Colouring, e: Colouring, n: int) -> bool:
    """Whether n-end-uniformity of ``sub`` for ``e`` yields (n+1)-end-uniformity for ``c``."""
    if end_uniformity_violation(sub, e.restrict(sub), n) is not None:
        return True
    return end_uniformity_violation(sub, c.restrict(sub), n + 1) is None
