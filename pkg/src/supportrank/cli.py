"""Command-line front end.

Every subcommand reads a network document from a file (``-`` for stdin),
writes results to stdout and diagnostics to stderr.  Exit status is 0 on
success, 1 on domain errors (invalid network, not tree-based, rank out of
range, oracle cap exceeded) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import oracle
from .decomposition import TrailKind, decompose, is_tree_based
from .errors import NetworkSyntaxError, OracleCapExceeded, SupportRankError
from .local_ranking import build_local_ranking
from .network import PhyloNetwork, generate_random, parse_network, parse_raw, serialize, validate
from .profiling import FORMAT_VERSION, format_summary, profile_delay, summarize, write_csv
from .ranking import SupportTreeSpace, count_support_trees, top_k

DOT_COLORS = {
    TrailKind.CROWN: "red",
    TrailKind.MFENCE: "blue",
    TrailKind.NFENCE: "black",
    TrailKind.WFENCE: "orange",
}


class UsageError(Exception):
    pass


def decimal_string(value: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str) -> PhyloNetwork:
    return parse_network(_read(path))


def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")
    sys.stdout.flush()


# subcommands


def cmd_validate(args) -> int:
    raw = parse_raw(_read(args.network))
    problems = validate(raw)
    for v in problems:
        _emit(str(v))
    if problems:
        return 1
    _emit("valid")
    return 0


def cmd_decompose(args) -> int:
    net = _load(args.network)
    dec = decompose(net)
    if args.format == "json":
        rows = [{"format_version": FORMAT_VERSION, "trail_index": z.trail_index,
                 "kind": str(z.kind), "num_arcs": len(z), "arcs": list(z.arcs)} for z in dec]
        _emit(json.dumps(rows))
    elif args.format == "dot":
        _emit("digraph decomposition {")
        for z in dec:
            for a in z.arcs:
                arc = net.arcs[a]
                _emit(f'  "{net.labels[arc.tail]}" -> "{net.labels[arc.head]}" '
                      f'[color={DOT_COLORS[z.kind]}, label="{z.trail_index}:{arc.weight}"];')
        _emit("}")
    else:
        for z in dec:
            _emit(f"{z.trail_index}\t{z.kind}\t{len(z)}\t{','.join(map(str, z.arcs))}")
    return 0


def cmd_count(args) -> int:
    _emit(str(count_support_trees(_load(args.network))))
    return 0


def cmd_is_tree_based(args) -> int:
    _emit("true" if is_tree_based(_load(args.network)) else "false")
    return 0


def _tree_printer(args):
    """Return (per-tree writer, closer) for the chosen output format."""
    digits = None if args.exact else args.decimal_digits
    state = {"first": True}

    def as_json(j, tree):
        obj = {"format_version": FORMAT_VERSION, "rank": j,
               "likelihood_fraction": str(tree.likelihood)}
        if digits is not None:
            obj["likelihood_decimal"] = decimal_string(tree.likelihood, digits)
        obj["rank_vector"] = list(tree.rank_vector)
        if not args.ranks_only:
            obj["arcs"] = tree.arcs
        prefix = "[" if state["first"] else ","
        state["first"] = False
        _emit(prefix + json.dumps(obj))

    def as_tsv(j, tree):
        cols = [str(j), str(tree.likelihood)]
        if digits is not None:
            cols.append(decimal_string(tree.likelihood, digits))
        cols.append(" ".join(map(str, tree.rank_vector)))
        if not args.ranks_only:
            cols.append(",".join(map(str, tree.arcs)))
        _emit("\t".join(cols))

    def close():
        if args.format == "json":
            _emit("[]" if state["first"] else "]")

    return (as_json if args.format == "json" else as_tsv), close


def _print_trees(args, trees) -> int:
    write, close = _tree_printer(args)
    for j, tree in enumerate(trees, 1):
        write(j, tree)
    close()
    return 0


def cmd_rank(args) -> int:
    return _print_trees(args, top_k(_load(args.network), args.k))


def cmd_enumerate(args) -> int:
    return _print_trees(args, SupportTreeSpace(_load(args.network)).enumerator())


def cmd_local_rank(args) -> int:
    net = _load(args.network)
    dec = decompose(net)
    if not 0 <= args.trail_index < len(dec):
        raise SupportRankError(
            f"trail index {args.trail_index} outside [0, {len(dec) - 1}]")
    z = dec[args.trail_index]
    ranking = build_local_ranking(z, net.weights)
    for r, e in enumerate(ranking.entries, 1):
        _emit(f"{r}\t{''.join(map(str, e.bits))}\t{e.contribution}")
    return 0


def cmd_oracle_rank(args) -> int:
    net = _load(args.network)
    return _print_trees(args, oracle.brute_force_top_k(net, args.k, args.cap))


def _parse_arc_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad arc list {text!r}: expected arc indices") from exc


def cmd_oracle_check(args) -> int:
    net = _load(args.network)
    subset = _parse_arc_list(args.arcs)
    bad = [a for a in subset if not 0 <= a < net.num_arcs]
    if bad:
        raise UsageError(f"arc indices {bad} outside [0, {net.num_arcs - 1}]")
    report = oracle.check_admissible(net, subset)
    _emit(f"subset\t{','.join(map(str, sorted(report.subset)))}")
    _emit(f"admissible\t{'true' if report.admissible else 'false'}")
    _emit(f"violated\t{','.join(sorted(report.violated_conditions))}")
    for d in report.details:
        _emit(f"detail\t{d}")
    return 0


def cmd_generate(args) -> int:
    if args.leaves < 2:
        raise UsageError("--leaves must be at least 2")
    if args.extra_arcs < 0:
        raise UsageError("--extra-arcs must be non-negative")
    sys.stdout.write(serialize(generate_random(args.leaves, args.extra_arcs, args.seed)))
    return 0


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return out


def cmd_profile_delay(args) -> int:
    if args.k < 1 or args.repetitions < 1:
        raise UsageError("--k and --repetitions must be positive")
    try:
        profiles = profile_delay(args.sizes, args.k, args.repetitions, args.seed)
    except ValueError as exc:
        raise SupportRankError(str(exc)) from exc
    write_csv(profiles, sys.stdout)
    sys.stdout.write(format_summary(summarize(profiles)))
    return 0


# parser


def _add_network(p):
    p.add_argument("network", help="network document, or - for stdin")


def _add_tree_output(p):
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--ranks-only", action="store_true", help="omit the arc list")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="print exact fractions only")
    g.add_argument("--decimal-digits", type=int, default=12, metavar="N",
                   help="significant digits of the decimal likelihood (default 12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supportrank",
        description="Rank the support trees of a tree-based phylogenetic network.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="list every violated network condition")
    _add_network(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decompose", help="print the maximal zig-zag trails")
    _add_network(p)
    p.add_argument("--format", choices=["tsv", "json", "dot"], default="tsv")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("count", help="number of support trees")
    _add_network(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("is-tree-based", help="print true or false")
    _add_network(p)
    p.set_defaults(func=cmd_is_tree_based)

    p = sub.add_parser("rank", help="stream the k most likely support trees")
    _add_network(p)
    p.add_argument("-k", type=int, required=True)
    _add_tree_output(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("enumerate", help="stream all support trees in ranking order")
    _add_network(p)
    _add_tree_output(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("local-rank", help="local ranking of one trail")
    _add_network(p)
    p.add_argument("trail_index", type=int, help="0-based trail index as printed by decompose")
    p.set_defaults(func=cmd_local_rank)

    p = sub.add_parser("oracle", help="brute-force reference answers")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("rank", help="top-k by exhaustive enumeration")
    _add_network(q)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP,
                   help=f"refuse networks with more arcs (default {oracle.DEFAULT_CAP})")
    _add_tree_output(q)
    q.set_defaults(func=cmd_oracle_rank)
    q = osub.add_parser("check", help="admissibility report for an arc subset")
    _add_network(q)
    q.add_argument("arcs", help="arc indices separated by commas or spaces")
    q.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("generate", help="print a random tree-based network")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--extra-arcs", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("profile-delay", help="measure per-emission delay against network size")
    p.add_argument("--sizes", type=_int_list, default=[200, 400, 800, 1600],
                   help="comma-separated arc counts")
    p.add_argument("--k", type=int, default=1000)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_profile_delay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NetworkSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SupportRankError, OracleCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
