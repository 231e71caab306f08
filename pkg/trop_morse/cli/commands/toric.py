"""
Toric commands: Ehrhart reciprocity and the LMD of +-s_P
"""
import argparse
from typing import List, Tuple

from trop_morse.schemas.reports import RunReport
from trop_morse.services.batch import run_batch
from trop_morse.services.input_service import InputService
from trop_morse.services.report_service import run_report
from trop_morse.services.toric_service import ToricService

EHRHART_COLUMNS = ["n", "lattice_count", "interior_count", "ehrhart", "direct_ok", "reciprocity_ok", "ok"]
TORIC_COLUMNS = ["n", "lattice_count", "interior_count", "euler", "delzant", "ok"]


def _load_all(sources: List[str]):
    loaded = [InputService.load_polytope(source) for source in sources]
    digests = {k: v for _, digest in loaded for k, v in digest.items()}
    return [p for p, _ in loaded], digests


def cmd_ehrhart(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    polytopes, digests = _load_all(args.inputs)
    reports = run_batch(lambda p: ToricService.ehrhart(p, args.kmax), polytopes)
    return run_report(args.argv, digests, reports), EHRHART_COLUMNS


def cmd_toric_lmd(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    polytopes, digests = _load_all(args.inputs)
    reports = run_batch(lambda p: ToricService.lmd(p, args.seed), polytopes)
    return run_report(args.argv, digests, reports), TORIC_COLUMNS


def register(subparsers) -> None:
    ehrhart = subparsers.add_parser("ehrhart", help="Ehrhart polynomial and reciprocity")
    ehrhart.add_argument("inputs", nargs="+", help="polytope JSON files or fixture:<cube|simplex|segment>/...")
    ehrhart.add_argument("--kmax", type=int, default=None, help="largest dilation checked (default from settings)")
    ehrhart.set_defaults(handler=cmd_ehrhart)

    parser = subparsers.add_parser("toric", help="tropical toric manifolds X_P")
    actions = parser.add_subparsers(dest="action", required=True)
    lmd = actions.add_parser("lmd", help="LMD of s_P and -s_P")
    lmd.add_argument("inputs", nargs="+", help="polytope JSON files or fixture:<cube|simplex|segment>/...")
    lmd.set_defaults(handler=cmd_toric_lmd)
