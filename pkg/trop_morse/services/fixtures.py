"""
Built-in named examples, addressable as ``fixture:<name>/<args>``
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import structlog

from trop_morse.core.exceptions import InputError
from trop_morse.core.validators import InputValidator
from trop_morse.geometry import toric
from trop_morse.geometry.curve import CurveDivisor, Edge, Profile, TropicalCurve, Vertex
from trop_morse.geometry.torus import TorusQuadraticDivisor

logger = structlog.get_logger()

CURVE = "curve"
TORUS = "torus"
LATTICE = "lattice"
POLYTOPE = "polytope"


@dataclass(frozen=True)
class Fixture:
    kind: str
    reference: str
    value: Any


def _ints(args: str, count: Optional[int] = None) -> List[int]:
    try:
        values = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise InputError(f"fixture arguments must be integers, got {args!r}")
    if count is not None and len(values) != count:
        raise InputError(f"expected {count} fixture argument(s), got {len(values)}")
    return values


def elliptic(n: int) -> Tuple[TropicalCurve, CurveDivisor]:
    """One vertex, one loop of length 1, profile rising from 0 to n (degree n)"""
    if n == 0:
        raise InputError("elliptic/0 has a constant integer profile")
    curve = TropicalCurve((Vertex("o"),), (Edge("e", "o", "o", Fraction(1)),))
    return curve, CurveDivisor({"e": Profile.linear(Fraction(1), Fraction(0), Fraction(n))}, f"elliptic[{n}]")


def tp1(n: int) -> Tuple[TropicalCurve, CurveDivisor]:
    if n < 1:
        raise InputError(f"tp1 needs n >= 1, got {n}")
    return toric.segment_divisor(toric.segment(0, n))


def star(p: int, q: int) -> Tuple[TropicalCurve, CurveDivisor]:
    """Centre "o" with p ascending and q descending spokes to finite ends.

    Every spoke leaves "o" with outgoing slope 0, so "o" is an intersection
    point with local index 1 - q.
    """
    if p < 0 or q < 0 or p + q == 0:
        raise InputError(f"star needs p, q >= 0 with p + q >= 1, got {p}, {q}")
    vertices = [Vertex("o")]
    edges = []
    profiles = {}
    for i in range(p + q):
        end = Fraction(1) if i < p else Fraction(-1)
        vertices.append(Vertex(f"x{i}"))
        edges.append(Edge(f"a{i}", "o", f"x{i}", Fraction(1)))
        profiles[f"a{i}"] = Profile.linear(Fraction(1), Fraction(0), end)
    return TropicalCurve(tuple(vertices), tuple(edges)), CurveDivisor(profiles, f"star[{p},{q}]")


def leaf(direction: str) -> Tuple[TropicalCurve, CurveDivisor]:
    """A single unbounded leaf whose potential rises (up) or falls (down) towards infinity"""
    if direction not in ("up", "down"):
        raise InputError(f"leaf direction must be up or down, got {direction!r}")
    end = Fraction(1) if direction == "up" else Fraction(-1)
    curve = TropicalCurve(
        (Vertex("o"), Vertex("inf", at_infinity=True)),
        (Edge("leaf", "o", "inf", Fraction(1)),),
    )
    return curve, CurveDivisor({"leaf": Profile.linear(Fraction(1), Fraction(0), end)}, f"leaf[{direction}]")


def trivalent_bad() -> Tuple[TropicalCurve, CurveDivisor]:
    """Tripod with a non-integer outgoing slope at the trivalent vertex"""
    curve = TropicalCurve(
        (Vertex("o"), Vertex("x0"), Vertex("x1"), Vertex("x2")),
        tuple(Edge(f"a{i}", "o", f"x{i}", Fraction(1)) for i in range(3)),
    )
    profiles = {
        "a0": Profile.linear(Fraction(1), Fraction(1, 2), Fraction(1)),
        "a1": Profile.linear(Fraction(1), Fraction(-1, 2), Fraction(-1)),
        "a2": Profile.linear(Fraction(1), Fraction(0), Fraction(1)),
    }
    return curve, CurveDivisor(profiles, "trivalent-bad")


def torus_diagonal(entries: List[int]) -> TorusQuadraticDivisor:
    if not entries:
        raise InputError("torus fixture needs at least one diagonal entry")
    return TorusQuadraticDivisor.diagonal(*entries)


def lattice_diagonal(entries: List[int]) -> List[List[int]]:
    if not entries:
        raise InputError("lattice fixture needs at least one diagonal entry")
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _dimension(n: int) -> int:
    if n < 1:
        raise InputError(f"polytope dimension must be positive, got {n}")
    return n


def _segment(values: List[int]) -> toric.LatticePolytope:
    if len(values) == 1:
        return toric.segment(0, values[0])
    if len(values) == 2:
        return toric.segment(*values)
    raise InputError("segment takes b or a,b")


def _dilated_simplex(values: List[int]) -> toric.LatticePolytope:
    n, k = values if len(values) == 2 else (values[0], 1)
    return toric.dilate(toric.standard_simplex(_dimension(n)), k)


# name -> (kind, usage, builder taking the raw argument string)
FIXTURES: Dict[str, Tuple[str, str, Callable[[str], Any]]] = {
    "elliptic": (CURVE, "elliptic/<n>: loop with s_n, deg n", lambda a: elliptic(*_ints(a, 1))),
    "tp1": (CURVE, "tp1/<n>: TP^1 with f_P for P = [0, n]", lambda a: tp1(*_ints(a, 1))),
    "star": (CURVE, "star/<p>,<q>: vertex with p ascending, q descending spokes", lambda a: star(*_ints(a, 2))),
    "leaf": (CURVE, "leaf/<up|down>: one leaf at infinity", leaf),
    "trivalent-bad": (CURVE, "trivalent-bad: non-integer slope at a trivalent vertex", lambda a: trivalent_bad()),
    "torus": (TORUS, "torus/<d1>,...: diagonal quadratic divisor", lambda a: torus_diagonal(_ints(a))),
    "lattice": (LATTICE, "lattice/<d1>,...: diagonal Bohr-Sommerfeld lattice", lambda a: lattice_diagonal(_ints(a))),
    "cube": (POLYTOPE, "cube/<n>: [0,1]^n", lambda a: toric.cube(_dimension(*_ints(a, 1)))),
    "simplex": (POLYTOPE, "simplex/<n>[,<k>]: k-dilated standard simplex", lambda a: _dilated_simplex(_ints(a))),
    "segment": (POLYTOPE, "segment/<b> or segment/<a>,<b>: [a, b]", lambda a: _segment(_ints(a))),
}


def list_fixtures() -> List[Dict[str, str]]:
    return [
        {"name": name, "kind": kind, "usage": usage}
        for name, (kind, usage, _) in sorted(FIXTURES.items())
    ]


def load_fixture(reference: str) -> Fixture:
    """Resolve ``fixture:<name>/<args>`` to its domain object"""
    name, args = InputValidator.parse_fixture(reference)
    if name not in FIXTURES:
        raise InputError(f"Unknown fixture {name!r}", context={"known": sorted(FIXTURES)})
    kind, _, builder = FIXTURES[name]
    try:
        value = builder(args)
    except (IndexError, TypeError, ValueError) as e:
        raise InputError(f"Bad arguments for fixture {name!r}: {e}")
    logger.debug("Fixture loaded", fixture=reference, kind=kind)
    return Fixture(kind, reference, value)
