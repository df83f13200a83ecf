"""Command-line surface: solve, oracle, generate, validate, bench, compare.

Exit codes: 0 success, 1 parse/validation error, 2 infeasible, 3 usage error,
4 instance too large for the oracle. Results go to stdout as ``key value``
lines; diagnostics and logs go to stderr.
"""
import argparse
import logging
import sys
from typing import List, Optional, TextIO

from .config import settings
from .models.errors import (
    GraphFormatError,
    InstanceTooLarge,
    InvalidArgument,
    LayeredGraphError,
    UnsupportedMode,
)
from .models.layered_graph import LayeredGraph, classify, labels_of
from .models.outcome import ProblemKind, SolveMode, SolveOutcome
from .services.bench_service import BenchService
from .services.graph_io import gen_full, gen_full_llg, gen_llg, gen_path, gen_random, parse, serialize
from .services.oracle import oracle_solve
from .services.solvers import solve
from .utils.validators import parse_k_range

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 3
EXIT_TOO_LARGE = 4

PROBLEMS = [kind.value for kind in ProblemKind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="layered-solver", description="Exact DP solvers for k-restricted layered graphs")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    solve_cmd = sub.add_parser("solve", help="Optimum value and count by layer-wise DP")
    solve_cmd.add_argument("--problem", required=True, choices=PROBLEMS)
    solve_cmd.add_argument("--mode", choices=[mode.value for mode in SolveMode], default=None,
                           help="paper (default) or exact; exact exists for cvc and cds only.")
    solve_cmd.add_argument("--witness", action="store_true", help="Also print one optimum solution.")
    solve_cmd.add_argument("--input", default="-", help="LGR v1 file, or - for stdin.")

    oracle_cmd = sub.add_parser("oracle", help="Optimum value and count by brute force")
    oracle_cmd.add_argument("--problem", required=True, choices=PROBLEMS)
    oracle_cmd.add_argument("--witness", action="store_true")
    oracle_cmd.add_argument("--input", default="-")

    gen_cmd = sub.add_parser("generate", help="Write an LGR v1 instance to stdout")
    gen_cmd.add_argument("--kind", required=True, choices=["full", "random", "llg", "full-llg", "path"])
    gen_cmd.add_argument("--k", type=int, default=1)
    gen_cmd.add_argument("--q", type=int, required=True)
    gen_cmd.add_argument("--intra-density", type=float, default=0.5)
    gen_cmd.add_argument("--inter-density", type=float, default=0.5)
    gen_cmd.add_argument("--seed", type=int, default=0)

    validate_cmd = sub.add_parser("validate", help="Check an instance and print its variant flags")
    validate_cmd.add_argument("--input", default="-")

    bench_cmd = sub.add_parser("bench", help="CSV of solve time against k")
    bench_cmd.add_argument("--problem", required=True, choices=PROBLEMS)
    bench_cmd.add_argument("--k", required=True, help="MIN..MAX")
    bench_cmd.add_argument("--q", type=int, required=True)
    bench_cmd.add_argument("--seed", type=int, default=0)
    bench_cmd.add_argument("--repeats", type=int, default=None)

    compare_cmd = sub.add_parser("compare", help="Paper mode against exact mode for cvc and cds")
    compare_cmd.add_argument("--k", default="1..3", help="MIN..MAX")
    compare_cmd.add_argument("--q", default="1..4", help="MIN..MAX")
    compare_cmd.add_argument("--densities", default="0,0.3,0.7,1", help="Comma-separated edge densities.")
    compare_cmd.add_argument("--seeds", type=int, default=2)
    compare_cmd.add_argument("--csv", action="store_true", help="Print the per-instance table instead of the summary.")
    return parser


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise GraphFormatError(line, f"input is not valid UTF-8 (byte {e.start})")


def _read_graph(path: str, stdin: TextIO) -> LayeredGraph:
    if path == "-":
        try:
            text = stdin.read()
        except UnicodeDecodeError as e:
            raise GraphFormatError(1, f"input is not valid UTF-8 ({e.reason})")
        return parse(text)
    with open(path, "rb") as handle:
        return parse(_decode(handle.read()))


def format_outcome(outcome: SolveOutcome) -> str:
    if not outcome.is_optimum:
        return "infeasible\n"
    lines = [f"value {outcome.value}", f"count {outcome.count}"]
    if outcome.witness is not None:
        parts = [
            f"{i}:{','.join(map(str, labels_of(mask)))}"
            for i, mask in enumerate(outcome.witness, 1)
        ]
        lines.append("witness " + "; ".join(parts))
    return "\n".join(lines) + "\n"


def format_variant(graph: LayeredGraph) -> str:
    variant = classify(graph)
    flags = {
        "llg": variant.is_llg, "slg": variant.is_slg, "clg": variant.is_clg, "full": variant.is_full,
    }
    rendered = " ".join(f"{name}={str(flag).lower()}" for name, flag in flags.items())
    return f"k={graph.k} q={graph.q} n={graph.n} {rendered}\n"


def _generate(args) -> LayeredGraph:
    if args.kind == "full":
        return gen_full(args.k, args.q)
    if args.kind == "full-llg":
        return gen_full_llg(args.k, args.q)
    if args.kind == "path":
        return gen_path(args.q)
    generator = gen_random if args.kind == "random" else gen_llg
    return generator(args.k, args.q, args.intra_density, args.inter_density, args.seed)


def _compare(args, out: TextIO) -> None:
    k_min, k_max = parse_k_range(args.k)
    q_min, q_max = parse_k_range(args.q)
    try:
        densities = [float(token) for token in args.densities.split(",")]
    except ValueError:
        raise UsageError(f"Invalid density list '{args.densities}'")
    service = BenchService()
    df = service.compare_modes(range(k_min, k_max + 1), range(q_min, q_max + 1), densities, range(args.seeds))
    if args.csv:
        df.to_csv(out, index=False)
        return
    for problem, stats in service.summarize_comparison(df).items():
        out.write(
            f"problem={problem} instances={stats['instances']} paper_suboptimal={stats['paper_suboptimal']} "
            f"fraction={stats['paper_suboptimal_fraction']:.4f} exact_mismatches={stats['exact_mismatches']}\n"
        )


def run(args, stdin: TextIO, out: TextIO) -> int:
    if args.command == "solve":
        graph = _read_graph(args.input, stdin)
        outcome = solve(graph, ProblemKind(args.problem), args.mode, args.witness)
        out.write(format_outcome(outcome))
        return EXIT_OK if outcome.is_optimum else EXIT_INFEASIBLE
    if args.command == "oracle":
        graph = _read_graph(args.input, stdin)
        outcome = oracle_solve(graph, ProblemKind(args.problem))
        if not args.witness:
            outcome = outcome.model_copy(update={"witness": None})
        out.write(format_outcome(outcome))
        return EXIT_OK if outcome.is_optimum else EXIT_INFEASIBLE
    if args.command == "generate":
        out.write(serialize(_generate(args)))
        return EXIT_OK
    if args.command == "validate":
        out.write(format_variant(_read_graph(args.input, stdin)))
        return EXIT_OK
    if args.command == "bench":
        k_min, k_max = parse_k_range(args.k)
        out.write(BenchService(repeats=args.repeats).scaling_csv(ProblemKind(args.problem), k_min, k_max, args.q, args.seed))
        return EXIT_OK
    if args.command == "compare":
        _compare(args, out)
        return EXIT_OK
    raise UsageError(f"unknown command '{args.command}'")


def main(argv: Optional[List[str]] = None, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    level = [settings.log_level, "INFO", "DEBUG"][min(args.verbose, 2)]
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    try:
        return run(args, stdin, stdout)
    except InstanceTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except LayeredGraphError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, UnsupportedMode, InvalidArgument) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Command '{args.command}' failed: {str(e)}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
