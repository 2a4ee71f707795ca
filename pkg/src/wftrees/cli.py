"""Command-line workbench.

Exit status: 0 success / true / found / holds, 1 false / none / violation /
fails, 2 usage, parse, validation or budget errors.  ``--json`` prints one
JSON document ``{"command": ..., "status": ..., "result": ...}`` per run.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .dstree import TreeError, enum_ds, format_seq, parse_seq, read_tree
from .embedding import BudgetExceeded
from .ordinal import ord_add, ord_cmp, ord_format, ord_mul_nat, ord_parse
from .orders import OrderKind, comparator, leq_star, min_lex1, min_lex2
from .rank import NOT_IN_TREE, RankError, embed_ds, rank_mu, reduced_rank
from .scattered import TermError, alpha_bound, embed_term, format_term, order_violation, parse_term
from .search import DEFAULT_COLOURING_BUDGET, find_n_end_uniform_copy, verify_partition_exhaustive
from .similarity import (
    ClassRegistry,
    ColouringError,
    as_tuple,
    class_colouring,
    constant_colouring,
    end_uniformity_violation,
    format_colouring,
    is_similar,
    length_colouring,
    random_colouring,
    read_colouring,
    sim_code,
    uniformity_violation,
)


class Outcome:
    def __init__(self, status: int = 0, lines=(), result=None):
        self.status = status
        self.lines = list(lines)
        self.result = result


class CliError(Exception):
    pass


def _seq(text: str):
    return parse_seq(text)


def _tuple(text: str):
    text = text.strip()
    if not text:
        return ()
    return as_tuple(parse_seq(p) for p in text.split(";"))


def _arities(text: str) -> set[int]:
    return {int(x) for x in text.split(",") if x.strip()}


# -- handlers ---------------------------------------------------------------------

def cmd_ord_cmp(a):
    r = ord_cmp(ord_parse(a.a), ord_parse(a.b))
    return Outcome(0, [r.name], r.name)


def cmd_ord_add(a):
    r = ord_format(ord_add(ord_parse(a.a), ord_parse(a.b)))
    return Outcome(0, [r], r)


def cmd_ord_mul(a):
    if a.n < 0:
        raise CliError("multiplier must be a natural number")
    r = ord_format(ord_mul_nat(ord_parse(a.a), a.n))
    return Outcome(0, [r], r)


def cmd_ds_enum(a):
    nodes = [format_seq(s) for s in enum_ds(a.n)]
    return Outcome(0, nodes, nodes)


def cmd_tree_validate(a):
    try:
        t = read_tree(a.file)
    except TreeError as e:
        return Outcome(1, [f"invalid: {e}"], {"valid": False, "error": str(e)})
    return Outcome(0, [f"ok {len(t)} nodes"], {"valid": True, "nodes": len(t)})


def cmd_tree_rank(a):
    t = read_tree(a.file)
    eta = _seq(a.at)
    if a.lam is None:
        r = rank_mu(t, a.mu, eta)
    else:
        r = reduced_rank(t, a.mu, a.lam, eta)
    text = "not-in-tree" if r == NOT_IN_TREE else str(r)
    return Outcome(0, [text], None if r == NOT_IN_TREE else r)


def cmd_tree_embed(a):
    t = read_tree(a.file)
    f = embed_ds(t, a.mu, a.alpha, _seq(a.at))
    pairs = [[format_seq(x), format_seq(y)] for x, y in f.items()]
    return Outcome(0, [f"{x} -> {y}" for x, y in pairs], pairs)


def cmd_seq_cmp(a):
    x, y = _seq(a.a), _seq(a.b)
    if a.order == "star":
        r = leq_star(x, y)
        return Outcome(0 if r else 1, ["true" if r else "false"], r)
    r = comparator(a.order)(x, y)
    return Outcome(0, [r.name], r.name)


def cmd_seq_min(a):
    seqs = [_seq(s) for s in a.seqs]
    if not seqs:
        raise CliError("seq min needs at least one sequence")
    r = format_seq(min_lex1(seqs) if a.order == "lex1" else min_lex2(seqs))
    return Outcome(0, [r], r)


def _items(text: str) -> list:
    return [parse_seq(p) for p in text.split(";")] if text.strip() else []


def cmd_sim_code(a):
    code = sim_code(_tuple(a.u) if a.sorted else _items(a.u))
    j = code.to_json()
    return Outcome(0, [json.dumps(j, sort_keys=True)], j)


def cmd_sim_similar(a):
    r = is_similar(_items(a.u), _items(a.v))
    return Outcome(0 if r else 1, ["true" if r else "false"], r)


def cmd_color_check(a):
    t = read_tree(a.tree)
    c = read_colouring(a.colors)
    c.check_total(t)
    if a.n is None:
        v = uniformity_violation(t, c)
        what = "uniform"
    else:
        v = end_uniformity_violation(t, c, a.n)
        what = f"{a.n}-end-uniform"
    if v is None:
        return Outcome(0, [what], {"holds": True, "property": what, "violation": None})
    return Outcome(1, [f"violation: {v}"], {"holds": False, "property": what, "violation": v.to_json()})


def cmd_color_gen(a):
    t = read_tree(a.tree)
    ar = _arities(a.arities)
    if a.kind == "constant":
        c = constant_colouring(t, ar, 0, a.mu)
    elif a.kind == "length":
        c = length_colouring(t, ar, a.mu)
    elif a.kind == "class":
        c = class_colouring(t, ar, ClassRegistry.from_tree(t, max(ar)))
    else:
        c = random_colouring(t, ar, a.mu, a.seed)
    text = format_colouring(c)
    return Outcome(0, text.splitlines(), text)


def cmd_search_copy(a):
    t, s = read_tree(a.tree), read_tree(a.pattern)
    c = read_colouring(a.colors)
    w = find_n_end_uniform_copy(t, s, c, a.n, node_budget=a.budget)
    if w is None:
        return Outcome(1, ["none"], {"found": False, "witness": None})
    j = w.to_json()
    lines = ["found"] + [f"{x} -> {y}" for x, y in j["embedding"]]
    return Outcome(0, lines, {"found": True, "witness": j})


def cmd_search_verify(a):
    t, s = read_tree(a.tree), read_tree(a.pattern)
    arity = _arities(a.arities) if a.arities else a.arity
    if arity is None:
        raise CliError("give --arity or --arities")
    r = verify_partition_exhaustive(
        t, s, a.mu, arity, a.n,
        budget=a.colouring_budget, node_budget=a.budget, threads=a.threads,
    )
    j = r.to_json()
    if r.holds:
        return Outcome(0, ["holds", f"colourings {r.colourings_checked}"], j)
    lines = ["fails", f"colourings {r.colourings_checked}/{r.colourings_total}"]
    lines += [" ; ".join(u) + f" -> {col}" for u, col in j["counterexample"]["assignment"]]
    return Outcome(1, lines, j)


def cmd_scatter_embed(a):
    term = parse_term(a.term)
    alpha = alpha_bound(term)
    res = {"term": format_term(term), "alpha": ord_format(alpha)}
    lines = [f"alpha {ord_format(alpha)}"]
    try:
        items = embed_term(term).items()
    except TermError as e:
        if a.check:
            raise
        res["embedding"] = None
        lines.append(f"positions not listed: {e}")
        return Outcome(0, lines, res)
    res["embedding"] = [[_fmt_pos(p), format_seq(x)] for p, x in items]
    lines += [f"{p} -> {x}" for p, x in res["embedding"]]
    status = 0
    if a.check:
        v = order_violation(term)
        res["order_preserved"] = v is None
        lines.append("order preserved" if v is None else f"order violated at {_fmt_pos(v[0])} / {_fmt_pos(v[1])}")
        status = 0 if v is None else 1
    return Outcome(status, lines, res)


def _fmt_pos(p) -> str:
    if p == ():
        return "*"
    g, inner = p
    rest = _fmt_pos(inner)
    return ord_format(g) if rest == "*" else f"{ord_format(g)}.{rest}"


# -- parser ---------------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    kw: Callable = (lambda d: {"default": d}) if defaults else (lambda d: {"default": argparse.SUPPRESS})
    p.add_argument("--json", action="store_true", help="emit one JSON document", **kw(False))
    p.add_argument("--threads", type=int, help="worker threads for exhaustive scans", **kw(1))
    p.add_argument("--budget", type=int, help="search node budget", **kw(10_000_000))
    p.add_argument("--colouring-budget", type=int, help="max colourings for verify", **kw(DEFAULT_COLOURING_BUDGET))
    p.add_argument("--seed", type=int, help="seed for random generators", **kw(0))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    parser = argparse.ArgumentParser(prog="wftrees", parents=[_common(True)], description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    def group(name, help):
        g = top.add_parser(name, help=help)
        return g.add_subparsers(dest="action", required=True)

    def leaf(sub, name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    g = group("ord", "ordinal arithmetic")
    p = leaf(g, "cmp", cmd_ord_cmp, "compare two ordinals")
    p.add_argument("a"); p.add_argument("b")
    p = leaf(g, "add", cmd_ord_add, "ordinal sum")
    p.add_argument("a"); p.add_argument("b")
    p = leaf(g, "mul", cmd_ord_mul, "multiply by a natural")
    p.add_argument("a"); p.add_argument("n", type=int)

    g = group("ds", "the trees ds(n)")
    p = leaf(g, "enum", cmd_ds_enum, "list ds(n) in canonical order")
    p.add_argument("n", type=int)

    g = group("tree", "tree files")
    p = leaf(g, "validate", cmd_tree_validate, "check a tree file")
    p.add_argument("file")
    p = leaf(g, "rank", cmd_tree_rank, "rank of a node")
    p.add_argument("--mu", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--at", default="-")
    p.add_argument("file")
    p = leaf(g, "embed", cmd_tree_embed, "embed ds(alpha) below a node of sufficient rank")
    p.add_argument("--mu", type=int, default=1)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--at", default="-")
    p.add_argument("file")

    g = group("seq", "decreasing sequences")
    p = leaf(g, "cmp", cmd_seq_cmp, "compare two sequences")
    p.add_argument("--order", choices=[k.value for k in OrderKind], default="lex2")
    p.add_argument("a"); p.add_argument("b")
    p = leaf(g, "min", cmd_seq_min, "least sequence under lex1 or lex2")
    p.add_argument("--order", choices=["lex1", "lex2"], default="lex2")
    p.add_argument("seqs", nargs="+")

    g = group("sim", "similarity")
    p = leaf(g, "code", cmd_sim_code, "similarity code of 'SEQ ; SEQ ; ...'")
    p.add_argument("--sorted", action="store_true", help="require <^2-increasing input")
    p.add_argument("u")
    p = leaf(g, "similar", cmd_sim_similar, "are two lists similar")
    p.add_argument("u"); p.add_argument("v")

    g = group("color", "colourings")
    p = leaf(g, "check", cmd_color_check, "uniformity (default) or n-end-uniformity")
    p.add_argument("--tree", required=True)
    p.add_argument("--colors", required=True)
    p.add_argument("-n", type=int)
    p = leaf(g, "gen", cmd_color_gen, "write a generated colouring file")
    p.add_argument("--tree", required=True)
    p.add_argument("--kind", choices=["constant", "length", "class", "random"], default="constant")
    p.add_argument("--mu", type=int, default=2)
    p.add_argument("--arities", default="1")

    g = group("search", "copy search and exhaustive verification")
    p = leaf(g, "copy", cmd_search_copy, "first n-end-uniform copy of a pattern")
    p.add_argument("--tree", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--colors", required=True)
    p.add_argument("-n", type=int, default=1)
    p = leaf(g, "verify", cmd_search_verify, "check all colourings")
    p.add_argument("--tree", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--arity", type=int)
    p.add_argument("--arities")
    p.add_argument("-n", type=int, default=1)

    g = group("scatter", "scattered orders")
    p = leaf(g, "embed", cmd_scatter_embed, "embed a term into (ds(alpha), <^3)")
    p.add_argument("--term", required=True)
    p.add_argument("--check", action="store_true")
    return parser


def run(argv=None) -> tuple[int, str]:
    """Run the CLI; return ``(status, output text)`` without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (2 if e.code else 0), ""
    command = f"{args.group} {args.action}"
    try:
        out = args.func(args)
    except (
        CliError, TreeError, RankError, TermError, ColouringError, BudgetExceeded,
        ValueError, KeyError, OSError,
    ) as e:
        out = Outcome(2, [f"error: {e}"], {"error": f"{type(e).__name__}: {e}"})
    if args.json:
        doc = {"command": command, "status": out.status, "result": out.result}
        return out.status, json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return out.status, "".join(line + "\n" for line in out.lines)


def main(argv=None) -> int:
    status, text = run(argv)
    stream = sys.stderr if status == 2 and not text.startswith("{") else sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
