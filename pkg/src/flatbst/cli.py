"""
Command-line entry point.

Exit codes: 0 success, 1 failed check or search miss, 2 unsorted input,
3 unreadable or malformed file, 64 bad flags or settings.
"""
import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from flatbst.bench import ALGORITHMS, CSV_HEADER, run_benchmark
from flatbst.builder import build
from flatbst.completion import make_complete
from flatbst.config import Settings, load_settings
from flatbst.errors import (
    CapacityError,
    CorruptTreeError,
    InputFormatError,
    LocalityError,
    ParameterError,
    UnsortedInputError,
)
from flatbst.implicit import search
from flatbst.keys import read_keys
from flatbst.oracle import check_edge_locality, lemma1_missing_edges, validate
from flatbst.parallel import build_parallel
from flatbst.serialize import FORMATS, read_tree, render
from flatbst.types import BuildOptions

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNSORTED = 2
EXIT_IO = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with EXIT_USAGE on bad flags."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _positive(text: str) -> int:
    value = _count(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flatbst", description="Minimal-height BST arrays from sorted input")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv) to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("build", help="build a tree and serialize it")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--n", type=_count, help="build over the ranks 0..n-1")
    source.add_argument("--input", type=Path, help="sorted key file, one integer per line")
    p.add_argument("--sort", action="store_true", help="sort the input instead of rejecting it")
    p.add_argument("--complete", action="store_true", help="rotate into a complete tree")
    p.add_argument("--no-parents", action="store_true", help="do not store the parent array")
    p.add_argument("--threads", type=_positive, help="worker threads (default FLATBST_THREADS)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", type=Path, help="write here instead of standard output")

    p = commands.add_parser("verify", help="validate a JSON tree")
    p.add_argument("--input", type=Path, required=True)

    p = commands.add_parser("search", help="search a sorted key file without building a tree")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--key", type=int, required=True)
    p.add_argument("--sort", action="store_true")

    p = commands.add_parser("bench", help="time construction; CSV on standard output")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="both")
    p.add_argument("--threads", type=_positive)
    p.add_argument("--repeat", type=_positive, help="timed repeats (default FLATBST_BENCH_REPEAT)")

    p = commands.add_parser("missing-edges", help="list links the perfect-tree formulas point past n-1")
    p.add_argument("--n", type=_positive, required=True)

    return parser


def _configure_logging(verbose: int, cfg: Settings) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, cfg.FLATBST_LOG_LEVEL)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("flatbst").setLevel(level)


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        output.write_text(text + "\n", encoding="utf-8")


def cmd_build(args: argparse.Namespace, cfg: Settings) -> int:
    threads = args.threads or cfg.FLATBST_THREADS
    keys = None
    if args.input is not None:
        keys = read_keys(args.input, sort=args.sort)
        n = len(keys)
    else:
        n = args.n

    opts = BuildOptions(store_parents=not args.no_parents, block_size=cfg.FLATBST_BLOCK_SIZE)
    if threads > 1:
        tree = build_parallel(n, opts, workers=threads)
    else:
        tree = build(n, opts)
    if args.complete:
        make_complete(tree)
    _emit(render(tree, args.format, keys), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: Settings) -> int:
    tree = read_tree(args.input)
    report = validate(tree)
    sys.stdout.write(report.render() + "\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_search(args: argparse.Namespace, cfg: Settings) -> int:
    keys = read_keys(args.input, sort=args.sort)
    outcome = search(keys, args.key)
    if outcome.found:
        sys.stdout.write(f"found {outcome.index} comparisons {outcome.comparisons}\n")
        return EXIT_OK
    sys.stdout.write(f"absent comparisons {outcome.comparisons}\n")
    return EXIT_FAILED


def cmd_bench(args: argparse.Namespace, cfg: Settings) -> int:
    threads = args.threads or cfg.FLATBST_THREADS
    repeat = args.repeat or cfg.FLATBST_BENCH_REPEAT
    rows = run_benchmark(args.n, args.algo, threads, repeat)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return EXIT_OK


def cmd_missing_edges(args: argparse.Namespace, cfg: Settings) -> int:
    edges = lemma1_missing_edges(args.n, check=False)
    for edge in edges:
        sys.stdout.write(f"{edge.source} {edge.target} {edge.kind.value} {'exempt' if edge.exempt else '-'}\n")
    check_edge_locality(args.n, edges)
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "search": cmd_search,
    "bench": cmd_bench,
    "missing-edges": cmd_missing_edges,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        cfg = load_settings()
    except ValidationError as e:
        sys.stderr.write(f"flatbst: invalid settings: {e}\n")
        return EXIT_USAGE
    _configure_logging(args.verbose, cfg)

    try:
        return COMMANDS[args.command](args, cfg)
    except UnsortedInputError as e:
        sys.stderr.write(f"flatbst: input not sorted at line {e.line} (use --sort)\n")
        return EXIT_UNSORTED
    except (OSError, InputFormatError) as e:
        sys.stderr.write(f"flatbst: {e}\n")
        return EXIT_IO
    except (ParameterError, CapacityError) as e:
        sys.stderr.write(f"flatbst: {e}\n")
        return EXIT_USAGE
    except (CorruptTreeError, LocalityError) as e:
        sys.stderr.write(f"flatbst: {e}\n")
        return EXIT_FAILED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
