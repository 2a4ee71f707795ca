"""The rank function rk_{T,mu} on finite trees, and copies of ds(alpha) found from it.

For a node of a finite tree the rank is 0 when it has fewer than ``mu``
children and otherwise one more than the ``mu``-th largest child rank.
:func:`rank_fixpoint_oracle` evaluates the defining clauses literally and is
kept as an independent check of that closed form.  Sequences outside the
tree get :data:`NOT_IN_TREE` (-1).
"""
from __future__ import annotations

from .dstree import DecSeq, Tree, enum_ds, format_seq, graft
from .embedding import Embedding

__all__ = [
    "NOT_IN_TREE",
    "RankError",
    "rank_table",
    "rank_mu",
    "rank_fixpoint_oracle",
    "fixpoint_rank_table",
    "reduced_rank",
    "embed_ds",
    "embed_ds_domain",
    "ORACLE_CAP",
]

NOT_IN_TREE = -1
ORACLE_CAP = 4096


class RankError(ValueError):
    pass


def _check_mu(mu: int) -> None:
    if not isinstance(mu, int) or mu < 1:
        raise RankError(f"mu must be a positive integer, got {mu!r}")


def rank_table(t: Tree, mu: int) -> dict:
    """Ranks of every node of ``t``, computed leaves-first."""
    _check_mu(mu)
    rk: dict = {}
    for seq in reversed(t.listing()):
        kids = sorted((rk[c] for c in t.children(seq)), reverse=True)
        rk[seq] = 0 if len(kids) < mu else kids[mu - 1] + 1
    return rk


def rank_mu(t: Tree, mu: int, eta: DecSeq) -> int:
    eta = tuple(eta)
    if eta not in t:
        _check_mu(mu)
        return NOT_IN_TREE
    return rank_table(t, mu)[eta]


def fixpoint_rank_table(t: Tree, mu: int, cap: int = ORACLE_CAP) -> dict:
    """Ranks of all nodes by iterating ``rk >= a`` for a = 0, 1, ... from the definition.

    ``rk >= 0`` is membership; ``rk >= a+1`` holds when at least ``mu``
    children satisfy ``rk >= a``.  A node's rank is the last ``a`` it
    satisfies.  Stops when no node is left, at the latest after ``|t|`` rounds.
    """
    _check_mu(mu)
    if len(t) > cap:
        raise RankError(f"oracle is limited to {cap} nodes, tree has {len(t)}")
    rk = dict.fromkeys(t.nodes, 0)
    at_least = set(t.nodes)
    a = 0
    while at_least:
        if a > len(t):
            raise AssertionError("rank of a finite tree exceeded its size")
        at_least = {x for x in t.nodes if sum(c in at_least for c in t.children(x)) >= mu}
        a += 1
        for x in at_least:
            rk[x] = a
    return rk


def rank_fixpoint_oracle(t: Tree, mu: int, eta: DecSeq, cap: int = ORACLE_CAP) -> int:
    """Rank of ``eta`` via :func:`fixpoint_rank_table`; a test oracle for :func:`rank_mu`."""
    table = fixpoint_rank_table(t, mu, cap)
    return table.get(tuple(eta), NOT_IN_TREE)


def reduced_rank(t: Tree, mu: int, lam: int, eta: DecSeq) -> int:
    r = rank_mu(t, mu, eta)
    if r == NOT_IN_TREE:
        return r
    return min(lam, r)


def embed_ds(t: Tree, mu: int, alpha: int, eta: DecSeq = ()) -> Embedding:
    """Embed ``eta`` grafted with ds(alpha) into ``t``, fixing the prefixes of ``eta``.

    Needs ``rank_mu(t, mu, eta) >= alpha``.  Child labels are chosen as in
    the inductive construction: for beta = 0, 1, ... take the least label
    above all earlier choices whose child has rank >= beta, then embed
    ds(beta) below that child.  With ``alpha <= mu`` a label always exists;
    for ``alpha > mu`` the same choices are attempted and :class:`RankError`
    is raised if one runs out.
    """
    eta = tuple(eta)
    rk = rank_table(t, mu)
    r = rk.get(eta, NOT_IN_TREE)
    if r < alpha:
        raise RankError(f"rank of {format_seq(eta)} is {r} < alpha = {alpha}")

    def below(node: DecSeq, a: int) -> dict:
        # relative map: suffix nu in ds(a) -> image in t, with () -> node
        out = {(): node}
        prev = None
        kids = t.children(node)
        for beta in range(a):
            gamma = next(
                (c[-1] for c in kids if rk[c] >= beta and (prev is None or c[-1] > prev)),
                None,
            )
            if gamma is None:
                if alpha <= mu:
                    raise AssertionError(f"no child of {format_seq(node)} for beta = {beta}")
                raise RankError(
                    f"alpha = {alpha} exceeds mu = {mu} and {format_seq(node)} has no "
                    f"child of rank >= {beta} above {prev}"
                )
            prev = gamma
            for nu, img in below(node + (gamma,), beta).items():
                out[(beta,) + nu] = img
        return out

    mapping = {eta[:i]: eta[:i] for i in range(len(eta))}
    for nu, img in below(eta, alpha).items():
        mapping[eta + nu] = img
    return Embedding(mapping)


def embed_ds_domain(alpha: int, eta: DecSeq = ()) -> Tree:
    """The tree that :func:`embed_ds` maps from."""
    return graft(tuple(eta), enum_ds(alpha)) if eta else enum_ds(alpha)

