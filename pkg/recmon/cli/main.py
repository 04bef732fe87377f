"""
``recmon`` command line.
"""
import argparse
import logging
import sys
import time
from typing import List, Optional

from recmon import __version__
from recmon.config import get_config
from recmon.errors import RecmonError
from recmon.models.schemas import Report

from recmon.cli.commands import COMMANDS, Outcome, resolve_alphabet
from recmon.synthesis.dispatch import SynthesisMode

logger = logging.getLogger(__name__)


def _add_system(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--lts", help="LTS file")
    group.add_argument("--process", help="Regular CCS process term")


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand name.

    The subcommand copies default to SUPPRESS so they never overwrite a value
    given before the subcommand.
    """
    common = argparse.ArgumentParser(add_help=False)
    unset = argparse.SUPPRESS if suppress else None
    common.add_argument("--alphabet", default=unset, help="Actions, e.g. a,b,c (default: RECMON_ALPHABET)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="Print a single JSON report")
    common.add_argument("--seed", type=int, default=unset, help="Seed for randomized commands")
    common.add_argument("--log-level", default=unset, help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recmon", description="Monitor synthesis and checking for recHML",
                                     parents=[_common_options(suppress=False)])
    parser.add_argument("--version", action="version", version=f"recmon {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options(suppress=True)

    p = sub.add_parser("classify", help="Fragment membership of a formula", parents=[common])
    p.add_argument("formula")

    p = sub.add_parser("synth", help="Synthesize a monitor", parents=[common])
    p.add_argument("formula")
    p.add_argument("--mode", choices=[m.value for m in SynthesisMode], default=SynthesisMode.AUTO.value)

    p = sub.add_parser("verdict", help="Verdict of a monitor on a trace", parents=[common])
    p.add_argument("monitor")
    p.add_argument("--trace", required=True, help="Finite a.b or lasso a.b(a.b)")

    p = sub.add_parser("check", help="Evaluate a formula on a trace or a system", parents=[common])
    p.add_argument("formula")
    p.add_argument("--trace")
    p.add_argument("--semantics", choices=["linear", "finfinite", "branching"], default="linear")
    _add_system(p)

    p = sub.add_parser("mc", help="Model check a formula on a system", parents=[common])
    p.add_argument("formula")
    _add_system(p)

    p = sub.add_parser("transform", help="Automata and regular monitor for a monitor", parents=[common])
    p.add_argument("monitor")
    p.add_argument("--stage", choices=["alternating", "nfa", "dfa", "regular"], default="regular")
    p.add_argument("--polarity", choices=["accept", "reject"], default="accept")

    p = sub.add_parser("normalize", help="Slim normal form of an HML formula", parents=[common])
    p.add_argument("formula")

    p = sub.add_parser("equiv", help="Verdict equivalence of two monitors", parents=[common])
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--bound", type=int, default=None, help="Compare traces up to this length only")

    p = sub.add_parser("simulate", help="Run a monitor instrumented with a system", parents=[common])
    p.add_argument("monitor")
    _add_system(p)
    p.add_argument("--depth", type=int, default=4, help="Trace depth for exhaustive runs")
    p.add_argument("--random", action="store_true", help="One random run instead")
    p.add_argument("--fuel", type=int, default=50, help="Step limit for a random run")

    p = sub.add_parser("extract", help="HML formula monitored by a complete monitor", parents=[common])
    p.add_argument("monitor")

    p = sub.add_parser("selftest", help="Run the acceptance sweep", parents=[common])
    p.add_argument("--formula-depth", type=int, default=3)
    p.add_argument("--trace-bound", type=int, default=5)
    p.add_argument("--random-count", type=int, default=None)
    p.add_argument("--lts-states", type=int, default=3, help="Largest LTS size in the branching sweep")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = get_config()
    level = (args.log_level or config.log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    seed = args.seed if args.seed is not None else config.seed

    started = time.perf_counter()
    outcome: Optional[Outcome] = None
    try:
        alphabet = resolve_alphabet(args)
        outcome = COMMANDS[args.command](args, alphabet, seed)
        report = Report(command=args.command, inputs=outcome.inputs, result=outcome.result,
                        diagnostics=outcome.diagnostics, seed=seed, exit_code=outcome.exit_code)
    except RecmonError as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        report = Report(command=args.command, diagnostics=[exc.detail], seed=seed,
                        exit_code=exc.exit_code, error_code=exc.code)
    report.timing_ms = round((time.perf_counter() - started) * 1000, 3)

    if args.json:
        print(report.model_dump_json(indent=2))
    elif outcome is not None:
        for line in outcome.text:
            print(line)
    else:
        print(f"error [{report.error_code}]: {report.diagnostics[0]}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
