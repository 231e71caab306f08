"""
Torus commands: Hesse-form RR checks and Bohr-Sommerfeld counts
"""
import argparse
from typing import List, Tuple

from trop_morse.schemas.reports import RunReport
from trop_morse.services.batch import run_batch
from trop_morse.services.input_service import InputService
from trop_morse.services.report_service import run_report
from trop_morse.services.torus_service import TorusService

TORUS_COLUMNS = ["n", "det", "count", "index", "euler", "degenerate", "brute_force_count", "rr_ok", "ok"]
BS_COLUMNS = ["n", "det", "count", "ok"]


def cmd_torus(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    LMD and verify_hesse_rr for every input, processed in parallel
    """
    loaded = [InputService.load_torus(source) for source in args.inputs]
    reports = run_batch(TorusService.check, [d for d, _ in loaded])
    digests = {k: v for _, digest in loaded for k, v in digest.items()}
    return run_report(args.argv, digests, reports), TORUS_COLUMNS


def cmd_bs(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    Bohr-Sommerfeld point counts with the |det L| cross-check
    """
    loaded = [InputService.load_lattice(source) for source in args.inputs]
    reports = run_batch(TorusService.bohr_sommerfeld, [lattice for lattice, _ in loaded])
    digests = {k: v for _, digest in loaded for k, v in digest.items()}
    return run_report(args.argv, digests, reports), BS_COLUMNS


def register(subparsers) -> None:
    parser = subparsers.add_parser("torus", help="quadratic divisors on R^n / Z^n")
    actions = parser.add_subparsers(dest="action", required=True)
    check = actions.add_parser("check", help="LMD and Hesse RR")
    check.add_argument("inputs", nargs="+", help="torus JSON files or fixture:torus/<d1>,...")
    check.set_defaults(handler=cmd_torus)

    parser = subparsers.add_parser("bs", help="Bohr-Sommerfeld points")
    actions = parser.add_subparsers(dest="action", required=True)
    count = actions.add_parser("count", help="count points of R^n / L Z^n")
    count.add_argument("inputs", nargs="+", help="lattice JSON files or fixture:lattice/<d1>,...")
    count.set_defaults(handler=cmd_bs)
