"""
Compose commands: Kunneth products, etale covers, symmetric powers
"""
import argparse
from typing import List, Tuple

from trop_morse.core.exceptions import InputError
from trop_morse.geometry.compose import CoverMode
from trop_morse.schemas.reports import RunReport
from trop_morse.services import fixtures
from trop_morse.services.compose_service import ComposeService
from trop_morse.services.input_service import InputService, to_point_set
from trop_morse.services.report_service import run_report

COLUMNS = ["operation", "euler", "expected", "oracle", "ok"]


def cmd_product(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    Kunneth product of two inputs; curve pairs and torus pairs get an oracle
    """
    kind_a, value_a, digests = InputService.load_source(args.first)
    kind_b, value_b, more = InputService.load_source(args.second)
    digests.update(more)
    curves = (value_a, value_b) if kind_a == kind_b == fixtures.CURVE else None
    tori = (value_a, value_b) if kind_a == kind_b == fixtures.TORUS else None
    report = ComposeService.product(
        to_point_set(kind_a, value_a, args.sign),
        to_point_set(kind_b, value_b, args.sign),
        curves=curves,
        tori=tori,
    )
    return run_report(args.argv, digests, [report]), COLUMNS


def cmd_cover(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    Degree-d etale cover; cyclic mode needs a circle curve and its divisor
    """
    mode = CoverMode(args.mode)
    if args.divisor is not None:
        curve, div, digests = InputService.load_curve(args.source, args.divisor)
        kind, value = fixtures.CURVE, (curve, div)
    else:
        kind, value, digests = InputService.load_source(args.source)
    if mode == CoverMode.CYCLIC and kind != fixtures.CURVE:
        raise InputError("cyclic covers need a curve (fixture, or curve file with --divisor)")
    base = value if kind == fixtures.CURVE else None
    report = ComposeService.cover(to_point_set(kind, value, args.sign), args.degree, mode, base)
    return run_report(args.argv, digests, [report]), COLUMNS


def cmd_sym(args: argparse.Namespace) -> Tuple[RunReport, List[str]]:
    """
    chi(Sym^n) by the binomial formula and by the series oracle
    """
    if (args.source is None) == (args.chi is None):
        raise InputError("give exactly one of SOURCE or --chi")
    if args.chi is not None:
        points, digests = ComposeService.chi_points(args.chi), {}
    else:
        points, digests = InputService.load_point_set(args.source, args.sign)
    report = ComposeService.sym(points, args.n)
    return run_report(args.argv, digests, [report]), COLUMNS


def _sign(value: str) -> int:
    if value not in ("1", "+1", "-1"):
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return int(value)


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _nonnegative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return number


def register(subparsers) -> None:
    parser = subparsers.add_parser("compose", help="products, covers and symmetric powers")
    actions = parser.add_subparsers(dest="action", required=True)
    source_help = "fixture, prior report, torus file or polytope file"

    product = actions.add_parser("product", help="Kunneth product of two inputs")
    product.add_argument("first", help=source_help)
    product.add_argument("second", help=source_help)
    product.add_argument("--sign", type=_sign, default=1, help="use -s_P for polytope inputs")
    product.set_defaults(handler=cmd_product)

    cover = actions.add_parser("cover", help="degree-d etale cover")
    cover.add_argument("source", help=source_help + ", or curve file with --divisor")
    cover.add_argument("--divisor", default=None, help="divisor file when SOURCE is a curve file")
    cover.add_argument("--degree", "-d", type=_positive, default=2)
    cover.add_argument("--mode", choices=[m.value for m in CoverMode], default=CoverMode.DISJOINT.value)
    cover.add_argument("--sign", type=_sign, default=1, help="use -s_P for polytope inputs")
    cover.set_defaults(handler=cmd_cover)

    sym = actions.add_parser("sym", help="Euler characteristic of Sym^n")
    sym.add_argument("source", nargs="?", default=None, help=source_help)
    sym.add_argument("--chi", type=int, default=None, help="use |chi| points instead of a source")
    sym.add_argument("--n", "-n", type=_nonnegative, required=True)
    sym.add_argument("--sign", type=_sign, default=1, help="use -s_P for polytope inputs")
    sym.set_defaults(handler=cmd_sym)
