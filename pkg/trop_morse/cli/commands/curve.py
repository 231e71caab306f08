"""
Curve commands: check a (curve, divisor) pair, run random Riemann-Roch suites
"""
import argparse
from typing import List, Tuple

from trop_morse.schemas.reports import RunReport
from trop_morse.services.curve_service import CurveService
from trop_morse.services.input_service import InputService
from trop_morse.services.report_service import run_report

CHECK_COLUMNS = ["name", "euler", "rotation", "degree", "chi_top", "genus", "rr_ok", "rotation_ok", "ok"]
RANDOM_COLUMNS = ["genus", "leaves", "seed", "count", "passed", "failed", "ok"]


def cmd_curve_check(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    Validate, classify and check RR for one curve with its divisor
    """
    curve, div, digests = InputService.load_curve(args.curve, args.divisor)
    report = CurveService.check(curve, div)
    return run_report(args.argv, digests, [report]), CHECK_COLUMNS


def cmd_curve_random(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    Random connected curves with permissible divisors, RR verified on each
    """
    report = CurveService.random_run(args.genus, args.leaves, args.seed, args.count, split=args.split)
    return run_report(args.argv, {}, [report]), RANDOM_COLUMNS


def register(subparsers) -> None:
    parser = subparsers.add_parser("curve", help="tropical curves")
    actions = parser.add_subparsers(dest="action", required=True)

    check = actions.add_parser("check", help="check one curve and divisor")
    check.add_argument("curve", help="curve JSON file or fixture:<name>/<args>")
    check.add_argument("divisor", nargs="?", help="divisor JSON file (omit for fixtures)")
    check.set_defaults(handler=cmd_curve_check)

    random = actions.add_parser("random", help="random RR property run")
    random.add_argument("--genus", type=int, default=2)
    random.add_argument("--leaves", type=int, default=0)
    random.add_argument("--count", type=int, default=200)
    random.add_argument("--split", action="store_true", help="also check the gluing formula on a random cut")
    random.set_defaults(handler=cmd_curve_random)
