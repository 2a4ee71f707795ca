"""Acceptance criteria, one test per criterion, each run at its stated
tolerance and time limit.  A PASS/FAIL line per criterion is printed in the
terminal summary."""
from itertools import combinations, product
import json
import random
import time

import pytest

from wftrees.cli import run
from wftrees.dstree import Tree, enum_ds, format_tree, subtrees
from wftrees.embedding import validate_embedding
from wftrees.ordinal import OMEGA, Cmp, ord_add, ordinal
from wftrees.orders import cmp_lex1, cmp_lex2, cmp_lex3, min_lex1, min_lex2, sort_by
from wftrees.rank import embed_ds, embed_ds_domain, fixpoint_rank_table, rank_mu, rank_table
from wftrees.scattered import all_terms, check_order_embedding
from wftrees.search import (
    Pairing,
    composed_colouring,
    find_n_end_uniform_copy,
    lift_holds,
    pair_f,
    transform_colouring_d,
    verify_partition_exhaustive,
)
from wftrees.similarity import (
    ClassRegistry,
    Colouring,
    end_ext_similar,
    end_uniform_groups,
    format_colouring,
    is_end_uniform,
    is_similar,
    length_colouring,
    lex2_listing,
)

pytestmark = pytest.mark.acceptance


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def random_tree(rng: random.Random, labels: int, max_nodes: int) -> Tree:
    """Grow a tree by adding random children of existing nodes."""
    nodes = [()]
    seen = {()}
    target = rng.randint(1, max_nodes)
    tries = 0
    while len(nodes) < target and tries < 20 * max_nodes:
        tries += 1
        parent = rng.choice(nodes)
        top = parent[-1] if parent else labels
        if top == 0:
            continue
        child = parent + (rng.randrange(top),)
        if child not in seen:
            seen.add(child)
            nodes.append(child)
    return Tree(nodes)


@pytest.fixture(scope="module")
def rank_corpus():
    """All trees over labels {0..4} with at most 12 nodes, and 500 seeded random trees."""
    small = list(subtrees(enum_ds(5), 12))
    rng = random.Random(2024)
    big = [random_tree(rng, 12, 200) for _ in range(500)]
    return small, big


# 1 -------------------------------------------------------------------------------

def test_c01_rank_law(record):
    with Timer() as tm:
        got = [rank_mu(enum_ds(n), 1, ()) for n in range(9)]
    ok = got == list(range(9)) and tm.elapsed < 1.0
    record("C1 rank law rk(ds(n)) = n, n=0..8", ok, f"{tm.elapsed:.3f}s")
    assert ok


# 2 -------------------------------------------------------------------------------

def test_c02_rank_oracle_equivalence(record, rank_corpus):
    small, big = rank_corpus
    mismatches = 0
    with Timer() as tm:
        for mu in (1, 2, 3):
            for t in small:
                fast, slow = rank_table(t, mu), fixpoint_rank_table(t, mu)
                if fast != slow or rank_mu(t, mu, ()) != slow[()]:
                    mismatches += 1
            for t in big:
                if rank_table(t, mu) != fixpoint_rank_table(t, mu):
                    mismatches += 1
    ok = len(small) == 133846 and mismatches == 0 and tm.elapsed < 30.0
    record(
        "C2 rank_mu == fixpoint oracle",
        ok,
        f"{len(small)} small + {len(big)} random trees x mu=1..3, {mismatches} mismatches, {tm.elapsed:.1f}s",
    )
    assert ok


# 3 -------------------------------------------------------------------------------

def test_c03_rank_monotone_in_mu(record, rank_corpus):
    small, big = rank_corpus
    bad = 0
    for t in small + big:
        tables = [rank_table(t, mu) for mu in (1, 2, 3, 4)]
        for x in t.nodes:
            r = [tb[x] for tb in tables]
            if not r[0] >= r[1] >= r[2] >= r[3]:
                bad += 1
    record("C3 rank monotone in mu", bad == 0, f"{len(small) + len(big)} trees, mu=1..4")
    assert bad == 0


# 4 -------------------------------------------------------------------------------

def test_c04_constructive_embedding(record):
    rng = random.Random(4)
    cases = failures = 0
    with Timer() as tm:
        while cases < 200:
            t = random_tree(rng, 8, 60) if cases % 4 else enum_ds(rng.randrange(1, 7))
            mu = rng.randrange(1, 4)
            rk = rank_table(t, mu)
            pool = [(x, a) for x, r in rk.items() for a in range(min(r, mu) + 1)]
            eta, alpha = rng.choice(pool)
            f = embed_ds(t, mu, alpha, eta)
            dom = embed_ds_domain(alpha, eta)
            fixes = all(f(eta[:i]) == eta[:i] for i in range(len(eta) + 1))
            if not (validate_embedding(f, dom, t) and fixes):
                failures += 1
            cases += 1
    ok = failures == 0 and tm.elapsed < 10.0
    record("C4 embed_ds valid and fixes prefixes", ok, f"200 cases, {failures} failures, {tm.elapsed:.2f}s")
    assert ok


# 5 -------------------------------------------------------------------------------

LABELS = list(range(6)) + [OMEGA, ord_add(OMEGA, 1), ordinal([(1, 2)]), ordinal([(2, 1)])]


def rand_seq(rng):
    k = rng.randrange(0, 5)
    return tuple(sorted(rng.sample(LABELS, k), reverse=True))


def test_c05_order_algorithms(record):
    rng = random.Random(5)
    bad_min = 0
    for _ in range(1000):
        A = [rand_seq(rng) for _ in range(rng.randint(1, 15))]
        if min_lex2(A) != sort_by(A, "lex2")[0] or min_lex1(A) != sort_by(A, "lex1")[0]:
            bad_min += 1
    bad_law = 0
    for _ in range(10 ** 4):
        a, b, c = rand_seq(rng), rand_seq(rng), rand_seq(rng)
        for cmp in (cmp_lex1, cmp_lex2, cmp_lex3):
            ab, ba = cmp(a, b), cmp(b, a)
            if ab != Cmp(-ba) or (ab == Cmp.EQ) != (a == b):
                bad_law += 1
            if ab < 0 and cmp(b, c) < 0 and not cmp(a, c) < 0:
                bad_law += 1
    ok = bad_min == 0 and bad_law == 0
    record("C5 minima and total-order laws", ok, f"1000 sets, 10^4 triples x 3 orders; {bad_min + bad_law} failures")
    assert ok


# 6 -------------------------------------------------------------------------------

def test_c06_similarity(record):
    rng = random.Random(6)
    nodes = lex2_listing(enum_ds(4))
    bad = 0
    for _ in range(10 ** 4):
        k = rng.randrange(0, 5)
        u, v, w = (tuple(rng.sample(nodes, k)) for _ in range(3))
        if not is_similar(u, u):
            bad += 1
        if is_similar(u, v) != is_similar(v, u):
            bad += 1
        if is_similar(u, v) and is_similar(v, w) and not is_similar(u, w):
            bad += 1
    implied = 0
    for k in range(len(nodes) + 1):
        for pre in combinations(nodes, k):
            above = nodes[nodes.index(pre[-1]) + 1:] if pre else nodes
            for r1, r2 in product(above, repeat=2):
                if end_ext_similar(pre, r1, r2):
                    implied += 1
                    if not is_similar(pre + (r1,), pre + (r2,)):
                        bad += 1
    record("C6 similarity laws; end_ext_similar => similar", bad == 0, f"all 2^16 prefixes, {implied} implications")
    assert bad == 0


# 7 -------------------------------------------------------------------------------

def test_c07_partition_micro_theorems(record):
    ds2, ds3 = enum_ds(2), enum_ds(3)
    with Timer() as tm:
        r_fail = verify_partition_exhaustive(ds2, ds2, 2, 1, 1)
        r_hold = verify_partition_exhaustive(ds3, ds2, 2, 1, 1)
    cx = r_fail.counterexample
    verified = cx is not None and find_n_end_uniform_copy(ds2, ds2, cx, 1) is None
    ok = (
        not r_fail.holds and verified
        and r_hold.holds and r_hold.colourings_checked == 256
        and tm.elapsed < 5.0
    )
    record("C7 ds(2)-/->ds(2) fails, ds(3)->ds(2) holds", ok, f"{tm.elapsed:.2f}s")
    assert ok


# 8 -------------------------------------------------------------------------------

def test_c08_length_colourings(record):
    ds5, ds3 = enum_ds(5), enum_ds(3)
    missing = 0
    for pattern in product(range(2), repeat=6):
        c = length_colouring(ds5, {1}, 2, lambda lengths, p=pattern: p[lengths[0]])
        w = find_n_end_uniform_copy(ds5, ds3, c, 1)
        if w is None or not is_end_uniform(w.image(), c.restrict(w.image())):
            missing += 1
    record("C8 every length colouring of ds(5) has an end-uniform ds(3)", missing == 0, f"64 patterns, {missing} missing")
    assert missing == 0


# 9 -------------------------------------------------------------------------------

def end_uniform_family(t: Tree, arities: set, mu: int, limit: int | None, rng: random.Random):
    """Colourings constant on each forced-equal class: all of them, or ``limit`` seeded ones."""
    groups = end_uniform_groups(t, arities, 1)
    loose = [(u,) for m in arities if m < 1 for u in combinations(lex2_listing(t), m)]
    groups = groups + [list(g) for g in loose]
    if limit is None or mu ** len(groups) <= limit:
        vecs = product(range(mu), repeat=len(groups))
    else:
        vecs = (tuple(rng.randrange(mu) for _ in groups) for _ in range(limit))
    for vec in vecs:
        yield Colouring(mu, arities, {u: col for g, col in zip(groups, vec) for u in g})


def reduction_sound(t: Tree, c: Colouring, reg: ClassRegistry, subs: list) -> bool:
    d = transform_colouring_d(t, c, reg)  # raises on a conflict
    pairing = Pairing(reg)
    codes = {}
    for r, partial in d.items():
        codes.setdefault(pair_f(pairing, partial), set()).add(pairing.key(partial))
    if any(len(v) > 1 for v in codes.values()):
        return False
    e = composed_colouring(t, c, reg, pairing)
    return all(lift_holds(sub, c, e, n) for sub in subs for n in (1, 2))


def test_c09_reduction_soundness(record):
    rng = random.Random(9)
    ds3, ds2 = enum_ds(3), enum_ds(2)
    reg3 = ClassRegistry.from_tree(ds3, 2)
    reg2 = ClassRegistry.from_tree(ds2, 2)
    subs3 = list(subtrees(ds3, 8))
    subs2 = list(subtrees(ds2, 8))
    arity_sets = [{1}, {2}, {1, 2}]
    counts = {}
    bad = 0
    with Timer() as tm:
        for mu in (1, 2):
            for ar in arity_sets:
                # exhaustive on ds(2); on ds(3) exhaustive up to 2^12 colourings, seeded beyond
                for name, t, reg, subs, limit in (
                    ("ds2", ds2, reg2, subs2, None),
                    ("ds3", ds3, reg3, subs3, 4096),
                ):
                    for c in end_uniform_family(t, ar, mu, limit, rng):
                        counts[name] = counts.get(name, 0) + 1
                        if not reduction_sound(t, c, reg, subs):
                            bad += 1
    ok = bad == 0 and tm.elapsed < 60.0
    record(
        "C9 reduction: d conflict-free, pair_f injective, lift holds",
        ok,
        f"{counts.get('ds3', 0)} colourings of ds(3), {counts.get('ds2', 0)} of ds(2), {tm.elapsed:.1f}s",
    )
    assert ok


# 10 ------------------------------------------------------------------------------

def test_c10_scattered_embeddings(record):
    terms = all_terms(3, betas=range(1, 5))
    with Timer() as tm:
        bad = sum(1 for t in terms if not check_order_embedding(t))
    ok = bad == 0 and tm.elapsed < 10.0
    record("C10 scattered terms embed into (ds(alpha), <^3)", ok, f"{len(terms)} terms, {tm.elapsed:.2f}s")
    assert ok


# 11 ------------------------------------------------------------------------------

def test_c11_determinism(record, tmp_path):
    for n in (2, 3, 5):
        (tmp_path / f"ds{n}.txt").write_text(format_tree(enum_ds(n)))
    ds = {n: str(tmp_path / f"ds{n}.txt") for n in (2, 3, 5)}
    commands = [
        ["search", "verify", "--tree", ds[2], "--pattern", ds[2], "--mu", "2", "--arity", "1", "-n", "1"],
        ["search", "verify", "--tree", ds[3], "--pattern", ds[2], "--mu", "2", "--arity", "1", "-n", "1"],
        ["tree", "embed", "--mu", "1", "--alpha", "3", ds[3]],
        ["tree", "rank", "--mu", "2", ds[5]],
        ["scatter", "embed", "--term", "prod(sum(atom,prod(atom,2,rev)),3,fwd)", "--check"],
    ]
    for i, pattern in enumerate([(0, 1, 0, 1, 0, 1), (1, 1, 0, 0, 1, 0)]):
        p = tmp_path / f"len{i}.col"
        p.write_text(format_colouring(length_colouring(enum_ds(5), {1}, 2, lambda L, q=pattern: q[L[0]])))
        commands.append(["search", "copy", "--tree", ds[5], "--pattern", ds[3], "--colors", str(p)])
    differing = []
    for argv in commands:
        outs = {run(argv + ["--json", "--threads", th])[1].encode() for th in ("1", "8", "1", "8")}
        outs |= {run(argv + ["--threads", th])[1].encode() + b"|text" for th in ("1", "8")}
        if len(outs) != 2:
            differing.append(argv[:2])
        json.loads(next(o for o in outs if not o.endswith(b"|text")))
    ok = not differing
    record("C11 identical bytes with --threads 1 and 8", ok, f"{len(commands)} commands x 2 runs x 2 thread counts")
    assert ok
