from itertools import combinations, product
import random

import pytest
from hypothesis import given, strategies as st

from wftrees.dstree import enum_ds
from wftrees.similarity import (
    ClassRegistry,
    Colouring,
    ColouringError,
    as_tuple,
    class_colouring,
    colouring_from_function,
    constant_colouring,
    end_ext_similar,
    end_uniform_groups,
    end_uniformity_violation,
    format_colouring,
    is_n_end_uniform,
    is_similar,
    is_uniform,
    length_colouring,
    lex2_listing,
    parse_colouring,
    random_colouring,
    sim_code,
    tuples_of,
    uniformity_violation,
)

from conftest import decseqs, trees
from oracles import o_lex2_sorted, o_n_end_uniform, o_similar, o_tuples, o_uniform

DS3 = enum_ds(3)
DS2 = enum_ds(2)


def distinct(k):
    return st.lists(decseqs(4, 4), min_size=k, max_size=k, unique=True)


class TestSimilarity:
    @given(st.integers(0, 4).flatmap(lambda k: st.tuples(distinct(k), distinct(k))))
    def test_matches_definition(self, uv):
        u, v = uv
        assert is_similar(u, v) == o_similar(u, v)

    def test_code_example(self):
        code = sim_code([(1,), (1, 0)])
        assert code.lengths == (1, 2)
        assert code.meets == ((1, 1), (1, 2))
        assert code.order == (1, 0)  # the extension comes first in <^2

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            sim_code([(1,), (1,)])

    def test_as_tuple(self):
        assert as_tuple([(1, 0), (1,)]) == ((1, 0), (1,))
        with pytest.raises(ValueError):
            as_tuple([(1,), (1, 0)])

    def test_listing_matches_oracle_sort(self):
        assert list(lex2_listing(enum_ds(4))) == o_lex2_sorted(list(enum_ds(4).nodes))
        assert list(tuples_of(DS3, 2)) == o_tuples(DS3.nodes, 2)

    def test_end_ext_similar_sufficient_on_ds3(self):
        nodes = lex2_listing(DS3)
        for k in range(3):
            for pre in combinations(nodes, k):
                above = nodes[nodes.index(pre[-1]) + 1:] if pre else nodes
                for r1, r2 in product(above, repeat=2):
                    if end_ext_similar(pre, r1, r2):
                        assert is_similar(pre + (r1,), pre + (r2,))

    def test_end_ext_similar_rejects_below(self):
        with pytest.raises(ValueError):
            end_ext_similar([(1,)], (0,), (2,))


class TestRegistry:
    def test_indices_dense_and_sorted(self):
        reg = ClassRegistry.from_tree(DS3, 2)
        assert [reg.index(c) for c in reg.codes] == list(range(len(reg)))
        assert list(reg.codes) == sorted(reg.codes)

    def test_classes_of_ds3(self):
        # singletons: one class per length; the empty tuple: one class
        reg = ClassRegistry.from_tree(DS3, 1)
        assert len(reg) == 1 + 4
        with pytest.raises(KeyError):
            reg.index(sim_code([(5, 4, 3, 2)]))

    def test_class_colouring_is_uniform(self):
        reg = ClassRegistry.from_tree(DS3, 2)
        c = class_colouring(DS3, {1, 2}, reg)
        assert is_uniform(DS3, c)


def all_colourings(t, arities, mu):
    ts = [u for m in sorted(arities) for u in o_tuples(t.nodes, m)]
    for vec in product(range(mu), repeat=len(ts)):
        yield dict(zip(ts, vec))


class TestUniformity:
    def test_exhaustive_against_oracle_ds2(self):
        # all 2^10 colourings of the 1- and 2-tuples of ds(2)
        for table in all_colourings(DS2, {1, 2}, 2):
            c = Colouring(2, {1, 2}, table)
            for n in (1, 2):
                assert is_n_end_uniform(DS2, c, n) == o_n_end_uniform(DS2.nodes, table, {1, 2}, n)
            assert is_uniform(DS2, c) == o_uniform(DS2.nodes, table, {1, 2})

    @pytest.mark.parametrize("seed", range(30))
    def test_random_against_oracle_ds3(self, seed):
        rng = random.Random(seed)
        arities = {rng.choice([1, 2, 3])}
        c = random_colouring(DS3, arities, 2, seed)
        # half the time, flatten onto end-uniform groups so positives occur
        if seed % 2:
            groups = end_uniform_groups(DS3, arities, 1)
            table = {u: rng.randrange(2) for g in groups for u in [g[0]]}
            c = Colouring(2, arities, {u: table[g[0]] for g in groups for u in g})
        got = is_n_end_uniform(DS3, c, 1)
        assert got == o_n_end_uniform(DS3.nodes, c.assignment, arities, 1)
        if seed % 2:
            assert got

    def test_violation_is_real(self):
        c = random_colouring(DS3, {2}, 2, 3)
        v = end_uniformity_violation(DS3, c, 1)
        assert v is not None
        assert v.first[:-1] == v.second[:-1] and is_similar(v.first, v.second)
        assert c(v.first) != c(v.second)
        assert uniformity_violation(DS3, c) is not None

    def test_length_colouring_uniform_on_singletons(self):
        assert is_uniform(DS3, length_colouring(DS3, {1}, 3))

    def test_constant(self):
        c = constant_colouring(DS3, {0, 1, 2}, 1)
        assert c.num_colours == 2 and is_uniform(DS3, c)

    def test_groups_partition(self):
        groups = end_uniform_groups(DS3, {1, 2, 3}, 2)
        flat = [u for g in groups for u in g]
        assert len(flat) == len(set(flat)) == 8 + 28 + 56 - 8  # arity 1 is unconstrained for n=2

    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            end_uniformity_violation(DS3, constant_colouring(DS3, {1}), 0)


class TestColouring:
    def test_undefined_tuple(self):
        c = Colouring(2, {1}, {((0,),): 1})
        with pytest.raises(ColouringError):
            c(((1,),))
        with pytest.raises(ColouringError):
            c.check_total(DS2)

    def test_validation(self):
        with pytest.raises(ValueError):
            Colouring(2, {1}, {((0,),): 2})
        with pytest.raises(ValueError):
            Colouring(2, {2}, {((0,),): 0})
        with pytest.raises(ValueError):
            Colouring(0, {1})

    def test_restrict(self):
        c = random_colouring(DS3, {1, 2}, 3, 0)
        r = c.restrict(DS2)
        assert set(r.assignment) == {u for k in (1, 2) for u in tuples_of(DS2, k)}

    @given(trees(max_nodes=10), st.integers(1, 3), st.integers(0, 100))
    def test_text_roundtrip(self, t, mu, seed):
        c = random_colouring(t, {0, 1, 2}, mu, seed)
        assert parse_colouring(format_colouring(c)) == c

    def test_parse_examples(self):
        c = parse_colouring("mu=2\n# x\n0 -> 1\n1,0 ; 1 -> 0\n-> 1\n")
        assert c.arities == {0, 1, 2}
        assert c(((1, 0), (1,))) == 0 and c(()) == 1

    @pytest.mark.parametrize(
        "bad",
        ["0 -> 1\n", "mu=2\n0 -> 5\n", "mu=2\n1 ; 1,0 -> 0\n", "mu=2\n0\n", "mu=2\n0 -> 1\n0 -> 0\n",
         "mu=2\narities=2\n0 -> 1\n"],
    )
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_colouring(bad)

    def test_from_function(self):
        c = colouring_from_function(DS2, {1}, 3, lambda u: len(u[0]))
        assert c(((1, 0),)) == 2
