# fdr-forge command line.
#
#   python -m fdr_forge.cli adjust pvalues.csv --proc bh --q 0.05
#   python -m fdr_forge.cli experiment counterexample --m 2 --q 0.25 --out results/
#   python -m fdr_forge.cli sweep config.json --out results/
#
# Exit codes: 0 success or PASS, 1 usage / input error, 2 experiment FAIL.

import argparse
import logging
import sys

from fdr_forge.cli import commands
from fdr_forge.cli.inputs import NAMED_SHAPES
from fdr_forge.errors import FdrForgeError
from fdr_forge.harness import EXPERIMENTS

logger = logging.getLogger("fdr_forge")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for FAIL here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(commands.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_procedure_flags(p: argparse.ArgumentParser, q_default: float | None) -> None:
    p.add_argument("--q", type=float, default=q_default, help="target FDR level in (0, 1)")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="Storey tuning parameter (default 0.5)")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default $FDR_FORGE_THREADS or 1); results do not depend on it")
    p.add_argument("--out", default="results", help="output directory (default results/)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fdr-forge", description="Step-up FDR procedures and their Monte Carlo checks")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adjust", help="run a procedure on a CSV/JSON file of p-values")
    p.add_argument("input", help="CSV or JSON file of p-values")
    p.add_argument("--proc", choices=("bh", "by", "storey", "step-up"), default="bh")
    _add_procedure_flags(p, 0.05)
    p.add_argument("--pi", type=float, default=None, help="constant pi for --proc step-up (default 1)")
    p.add_argument("--shape", default=None,
                   help=f"shape for --proc step-up: {', '.join(NAMED_SHAPES)}, or JSON / a JSON file")
    p.add_argument("--out", default=None, help="also write the result (with adjusted p-values) as JSON")
    p.set_defaults(func=commands.cmd_adjust)

    p = sub.add_parser("experiment", help="run a named experiment and write its verdict report")
    p.add_argument("name", choices=tuple(EXPERIMENTS), metavar="name", help=", ".join(EXPERIMENTS))
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--m-list", default=None, help="comma-separated m values, e.g. 100,1000")
    p.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
    _add_procedure_flags(p, None)
    _add_run_flags(p)
    p.set_defaults(func=commands.cmd_experiment)

    p = sub.add_parser("sweep", help="generators x procedures x m x q sweep from a JSON config")
    p.add_argument("config", help="JSON sweep config")
    p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default="results")
    p.set_defaults(func=commands.cmd_sweep)

    p = sub.add_parser("plot", help="plot two columns of a result CSV")
    p.add_argument("table", help="CSV table written by experiment or sweep")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--group", default=None, help="one line per distinct value of this column")
    p.add_argument("--title", default=None)
    p.add_argument("--out", default=None, help="image path (default: next to the CSV)")
    p.set_defaults(func=commands.cmd_plot)

    p = sub.add_parser("list", help="list experiments and their overrides")
    p.set_defaults(func=commands.cmd_list)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    logging.basicConfig(format="%(message)s", stream=sys.stderr)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except (FdrForgeError, OSError) as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return commands.EXIT_USAGE
