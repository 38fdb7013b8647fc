"""Command line front end.

Exit codes: 0 success (including negative verdicts), 1 usage or capacity,
2 unparsable input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import formats
from .editing import (
    ORACLE_MAX_K,
    apply,
    decompose_into_merge_trace,
    exact_edit,
    heuristic_edit,
    module_violation,
    oracle_exact_edit,
    trace_edit_union,
)
from .errors import CapacityError, CographError, ContractError, InputError, InvariantViolation
from .genbench import METHODS, GeneratorConfig, generate, run_bench
from .graph import build_cotree, find_p4, is_cograph
from .modules import ORACLE_MAX_N, build_mdt
from .spider import recognize_spider

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for bad input files here
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _load_graph(path):
    try:
        return formats.read_edge_list(path)
    except InputError as exc:
        raise _ParseError(f"{path}: {exc}") from None


def _vertices(s) -> str:
    return " ".join(map(str, sorted(s)))


def cmd_recognize(args, out) -> int:
    g = _load_graph(args.graph)
    w = find_p4(g)
    if w is None:
        out.write("cograph\n")
        out.write(formats.dump_tree(build_cotree(g)))
    else:
        out.write("not-cograph\n")
        out.write(f"P4: {w.a} {w.b} {w.c} {w.d}\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    g = _load_graph(args.graph)
    out.write(formats.dump_tree(build_mdt(g)))
    return EXIT_OK


def cmd_edit(args, out) -> int:
    g = _load_graph(args.graph)
    records, spider_steps = (), ()
    if args.method == "heuristic":
        result = heuristic_edit(g)
        f = result.edits
        records, spider_steps = result.trace, result.spider_steps
    elif args.method == "exact":
        f = exact_edit(g)
    else:
        f = oracle_exact_edit(g, args.max_k)
        if f is None:
            raise CapacityError(f"no edit set with at most {args.max_k} pairs (oracle --max-k cap)")
    if args.trace and args.method != "heuristic":
        try:
            records = decompose_into_merge_trace(g, f)
        except ContractError as exc:
            raise ContractError(f"cannot write merge trace: {exc}") from None
    text = formats.format_edit_set(g, f)
    if args.out:
        formats.write_text(args.out, text)
    else:
        out.write(text)
    if args.trace:
        formats.write_text(args.trace, formats.dump_trace(records, spider_steps))
    out.write(f"edits: {len(f)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = _load_graph(args.graph)
    try:
        f = formats.read_edit_set(args.edits, g)
    except InputError as exc:
        raise _ParseError(f"{args.edits}: {exc}") from None
    h = apply(g, f)
    cograph = is_cograph(h)
    exhaustive = g.n <= ORACLE_MAX_N
    bad = module_violation(g, h, exhaustive)
    out.write(f"cograph: {str(cograph).lower()}\n")
    out.write(f"edits: {len(f)}\n")
    out.write(f"module_preserving: {str(bad is None).lower()}\n")
    out.write(f"module_check: {'exhaustive' if exhaustive else 'strong-modules'}\n")
    if bad is not None:
        out.write(f"violated_module: {_vertices(bad)}\n")
    if cograph and bad is None:
        trace = decompose_into_merge_trace(g, f)
        out.write(f"trace_records: {len(trace)}\n")
        out.write(f"trace_union_equals_edits: {str(trace_edit_union(trace) == f).lower()}\n")
    return EXIT_OK


def cmd_spider(args, out) -> int:
    g = _load_graph(args.graph)
    d = recognize_spider(g)
    if d is None:
        out.write("not-spider\n")
        return EXIT_OK
    out.write(f"{d.kind}\n")
    out.write(f"K: {_vertices(d.body)}\n")
    out.write(f"S: {_vertices(d.legs)}\n")
    out.write(f"R: {_vertices(d.head)}\n".replace(" \n", "\n"))
    out.write("matching: " + " ".join(f"{k}-{s}" for k, s in d.matching) + "\n")
    return EXIT_OK


def cmd_generate(args, out) -> int:
    cfg = GeneratorConfig(args.n, args.seed, args.max_children, args.flips)
    g, _ = generate(cfg)
    formats.write_text(args.out, formats.format_edge_list(g), out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    configs = [
        GeneratorConfig(n, args.seed + i, args.max_children, q)
        for n in args.n
        for q in args.flips
        for i in range(args.trials)
    ]
    report = run_bench(configs, methods, args.max_k)
    formats.write_text(args.report, report.to_csv(), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cographedit", description="Cograph recognition, modular decomposition and cograph editing.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("graph", help="edge-list file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    graph_cmd("recognize", cmd_recognize, "Report whether the graph is a cograph (cotree or P4 witness).")
    graph_cmd("decompose", cmd_decompose, "Print the modular decomposition tree as JSON.")
    graph_cmd("spider", cmd_spider, "Report a thin/thick spider decomposition.")

    sp = graph_cmd("edit", cmd_edit, "Compute an edit set turning the graph into a cograph.")
    sp.add_argument("--method", choices=METHODS, default="heuristic")
    sp.add_argument("--out", help="write the edit set here instead of stdout")
    sp.add_argument("--trace", metavar="PATH", help="also write the merge trace as JSON")
    sp.add_argument("--max-k", type=int, default=4, help=f"oracle search bound (at most {ORACLE_MAX_K})")

    sp = sub.add_parser("verify", help="Check an edit set against a graph.")
    sp.add_argument("graph")
    sp.add_argument("edits")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("generate", help="Write a random (perturbed) cograph as an edge list.")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-children", type=int, default=3)
    sp.add_argument("--flips", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("bench", help="Run editors on generated instances and write a CSV report.")
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--flips", type=int, nargs="+", default=[0])
    sp.add_argument("--methods", default="heuristic,exact")
    sp.add_argument("--seed", type=int, default=0, help="trial i uses seed + i")
    sp.add_argument("--max-children", type=int, default=3)
    sp.add_argument("--max-k", type=int, default=4, help="oracle search bound")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except _ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except InvariantViolation as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except CographError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
