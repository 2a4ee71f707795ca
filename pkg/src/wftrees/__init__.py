"""Decreasing-sequence trees: orders, ranks, similarity, end-uniform copies,
and embeddings of scattered linear orders."""
from .dstree import (
    DecSeq,
    Tree,
    TreeError,
    decseq,
    enum_ds,
    format_seq,
    format_tree,
    graft,
    parse_seq,
    parse_tree,
    seq_meet,
    subtrees,
    validate_tree,
)
from .embedding import BudgetExceeded, Embedding, enum_embeddings, validate_embedding
from .ordinal import OMEGA, Cmp, Ordinal, ord_add, ord_cmp, ord_format, ord_mul_nat, ord_parse, ordinal
from .orders import cmp_lex1, cmp_lex2, cmp_lex3, leq_star, min_lex1, min_lex2
from .rank import NOT_IN_TREE, embed_ds, rank_fixpoint_oracle, rank_mu, reduced_rank
from .scattered import Atom, Prod, Sum, alpha_bound, check_order_embedding, embed_term, materialize
from .search import (
    Pairing,
    find_n_end_uniform_copy,
    pair_f,
    transform_colouring_d,
    verify_partition_exhaustive,
)
from .similarity import (
    ClassRegistry,
    Colouring,
    class_index,
    end_ext_similar,
    is_n_end_uniform,
    is_similar,
    is_uniform,
    sim_code,
)

__all__ = [
    "DecSeq",
    "Tree",
    "TreeError",
    "decseq",
    "enum_ds",
    "format_seq",
    "format_tree",
    "graft",
    "parse_seq",
    "parse_tree",
    "seq_meet",
    "subtrees",
    "validate_tree",
    "BudgetExceeded",
    "Embedding",
    "enum_embeddings",
    "validate_embedding",
    "OMEGA",
    "Cmp",
    "Ordinal",
    "ord_add",
    "ord_cmp",
    "ord_format",
    "ord_mul_nat",
    "ord_parse",
    "ordinal",
    "cmp_lex1",
    "cmp_lex2",
    "cmp_lex3",
    "leq_star",
    "min_lex1",
    "min_lex2",
    "NOT_IN_TREE",
    "embed_ds",
    "rank_fixpoint_oracle",
    "rank_mu",
    "reduced_rank",
    "Atom",
    "Prod",
    "Sum",
    "alpha_bound",
    "check_order_embedding",
    "embed_term",
    "materialize",
    "Pairing",
    "find_n_end_uniform_copy",
    "pair_f",
    "transform_colouring_d",
    "verify_partition_exhaustive",
    "ClassRegistry",
    "Colouring",
    "class_index",
    "end_ext_similar",
    "is_n_end_uniform",
    "is_similar",
    "is_uniform",
    "sim_code",
]

__version__ = "0.1.0"
