"""Command line: ``fxtmine {build,insert,frequent,rules,verify,bench,gen,stats}``.

Exit codes: 0 success, 1 error (including usage errors), 2 verification
found undercounted paths.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_bench
from .fxt import Fxt
from .ingest import LogParseError, dump_text_transactions, dump_transactions, generate_synthetic, read_log
from .mining import MiningParams, as_fraction, association_rules, format_itemsets, format_rules, frequent_itemsets
from .oracle import SoundnessError, verify_soundness
from .xmlio import FxtParseError, FxtSerializationError, document_format, dump_fxt, is_element_name, load_fxt

EXIT_OK, EXIT_ERROR, EXIT_DISCREPANCY = 0, 1, 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1; 2 is reserved for verification results
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _threshold(text: str):
    try:
        return as_fraction(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _supports(text: str):
    return [_threshold(part) for part in text.split(",") if part.strip()]


def _read_fxt(path: str) -> tuple[Fxt, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read FXT document {path}: {exc.strerror}") from None
    return load_fxt(data), document_format(data)


def _read_log(path: str):
    try:
        return read_log(path)
    except OSError as exc:
        raise CliError(f"cannot read log {path}: {exc.strerror}") from None


def _write(path: str | None, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _pick_format(tree: Fxt, requested: str) -> str:
    if requested != "auto":
        return requested
    return "paper" if all(is_element_name(n.item) for n in tree.breadth.values()) else "canonical"


def cmd_build(args) -> int:
    log = _read_log(args.input)
    tree = Fxt()
    for t in log:
        tree.insert(t.items)
    _write(args.output, dump_fxt(tree, _pick_format(tree, args.doc_format)))
    print(f"transactions: {tree.root_counter}, nodes: {tree.node_count}", file=sys.stderr if args.output in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_insert(args) -> int:
    tree, fmt = _read_fxt(args.fxt)
    log = _read_log(args.input)
    for t in log:
        tree.insert(t.items)
    if fmt == "paper" and not all(is_element_name(n.item) for n in tree.breadth.values()):
        fmt = "canonical"
    Path(args.fxt).write_bytes(dump_fxt(tree, fmt))
    print(f"inserted: {len(log)}, transactions: {tree.root_counter}, nodes: {tree.node_count}")
    return EXIT_OK


def cmd_frequent(args) -> int:
    tree, _ = _read_fxt(args.fxt)
    _write(args.output, format_itemsets(frequent_itemsets(tree, args.min_support), args.format))
    return EXIT_OK


def cmd_rules(args) -> int:
    tree, _ = _read_fxt(args.fxt)
    rules = association_rules(tree, MiningParams(args.min_support, args.min_confidence))
    _write(args.output, format_rules(rules, args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    tree, _ = _read_fxt(args.fxt)
    log = _read_log(args.log)
    try:
        report = verify_soundness(tree, log)
    except SoundnessError as exc:
        print(f"overcount: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(report.summary(), file=sys.stderr)
    if not report.ok:
        _write(args.output, report.to_csv())
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_bench(args) -> int:
    report = run_bench(
        n=args.transactions,
        alphabet=args.alphabet,
        avg_len=args.avg_len,
        seed=args.seed,
        supports=args.supports,
        baseline=args.baseline,
    )
    _write(args.output, report.to_csv())
    if args.plot_data:
        Path(args.plot_data).write_text(report.to_plot_data(), encoding="utf-8")
    return EXIT_OK


def cmd_gen(args) -> int:
    log = generate_synthetic(args.seed, args.transactions, args.alphabet, args.avg_len)
    _write(args.output, dump_transactions(log) if args.format == "xml" else dump_text_transactions(log))
    return EXIT_OK


def cmd_stats(args) -> int:
    tree, fmt = _read_fxt(args.fxt)
    depth = max((n.depth for n in tree), default=0)
    print(f"transactions: {tree.root_counter}")
    print(f"nodes: {tree.node_count}")
    print(f"breadth nodes: {len(tree.breadth)}")
    print(f"max depth: {depth}")
    print(f"format: {fmt}")
    print(f"serialized bytes: {len(dump_fxt(tree, fmt))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fxtmine", description="Incremental frequent-itemset mining with an FXT.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build an FXT document from a transaction log")
    p.add_argument("--input", required=True, help="XML or plain-text transaction log")
    p.add_argument("--output", help="FXT document path (default: stdout)")
    p.add_argument("--doc-format", choices=["auto", "paper", "canonical"], default="auto")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("insert", help="insert new transactions into an existing FXT document")
    p.add_argument("--fxt", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_insert)

    p = sub.add_parser("frequent", help="frequent itemsets from an FXT document")
    p.add_argument("--fxt", required=True)
    p.add_argument("--min-support", type=_threshold, default=_threshold("0.25"))
    p.add_argument("--format", choices=["xml", "csv"], default="xml")
    p.add_argument("--output")
    p.set_defaults(func=cmd_frequent)

    p = sub.add_parser("rules", help="association rules from an FXT document")
    p.add_argument("--fxt", required=True)
    p.add_argument("--min-support", type=_threshold, default=_threshold("0.25"))
    p.add_argument("--min-confidence", type=_threshold, default=_threshold("0.5"))
    p.add_argument("--format", choices=["xml", "csv"], default="xml")
    p.add_argument("--output")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("verify", help="check FXT counters against exact counts from the log")
    p.add_argument("--fxt", required=True)
    p.add_argument("--log", required=True)
    p.add_argument("--output", help="CSV of undercounted paths (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="synthetic benchmark, FXT vs Apriori")
    p.add_argument("--transactions", type=int, default=10_000)
    p.add_argument("--alphabet", type=int, default=100)
    p.add_argument("--avg-len", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--supports", type=_supports, default=_supports("0.2,0.4,0.6"))
    p.add_argument("--baseline", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--output", help="CSV report (default: stdout)")
    p.add_argument("--plot-data", help="also write a gnuplot data file here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a synthetic transaction log")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transactions", type=int, default=1000)
    p.add_argument("--alphabet", type=int, default=100)
    p.add_argument("--avg-len", type=int, default=15)
    p.add_argument("--format", choices=["xml", "text"], default="xml")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="summary of an FXT document")
    p.add_argument("--fxt", required=True)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, LogParseError, FxtParseError, FxtSerializationError, ValueError) as exc:
        print(f"fxtmine {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
