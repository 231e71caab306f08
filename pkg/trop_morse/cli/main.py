"""
Command-line entry point; includes every command module
"""
import argparse
import sys
import time
from typing import List, Optional

import structlog

from trop_morse import __version__
from trop_morse.cli.commands import compose, curve, toric, torus
from trop_morse.core.config import settings
from trop_morse.core.exceptions import InputError, TheoremMismatchError, TropMorseError
from trop_morse.core.logging import configure_logging
from trop_morse.services.fixtures import list_fixtures
from trop_morse.services.report_service import canonical_json, render_text, run_report

logger = structlog.get_logger()


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit 3 like every other parse error"""

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def cmd_fixtures(args: argparse.Namespace):
    """
    List the built-in fixtures
    """
    return run_report(args.argv, {}, list_fixtures()), ["name", "kind", "usage"]


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return seed


def build_parser() -> CliParser:
    parser = CliParser(
        prog="trop-morse",
        description="Local Morse data of tropical divisors and their Riemann-Roch identities",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="canonical JSON on stdout")
    parser.add_argument("--seed", type=_seed, default=settings.default_seed)
    parser.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")

    subparsers = parser.add_subparsers(dest="command", required=True)
    curve.register(subparsers)
    torus.register(subparsers)
    toric.register(subparsers)
    compose.register(subparsers)
    fixtures = subparsers.add_parser("fixtures", help="list built-in fixtures")
    fixtures.set_defaults(handler=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit code (0 ok, 1 invalid input, 2 mismatch, 3 I/O or parse)"""
    argv = list(sys.argv[1:] if argv is None else argv)
    configure_logging(settings.log_level, settings.log_json)
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.quiet:
            configure_logging("WARNING", settings.log_json)
        args.argv = argv
        report, columns = args.handler(args)
    except TropMorseError as e:
        logger.error("Command failed", error=e.detail, exit_code=e.exit_code)
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except ValueError as e:
        logger.error("Command failed", error=str(e), exit_code=InputError.exit_code)
        sys.stderr.write(f"error: {e}\n")
        return InputError.exit_code

    report = report.model_copy(update={"wall_time_s": round(time.perf_counter() - started, 4)})
    sys.stdout.write(canonical_json(report) if args.json else render_text(report, columns))
    logger.info("Command finished", command=args.command, ok=report.ok, wall_time_s=report.wall_time_s)
    if not report.ok:
        logger.error("Theorem check failed", command=args.command)
        return TheoremMismatchError.exit_code
    return 0
