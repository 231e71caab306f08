"""
Tropical curves as metric graphs with infinite leaves, C-infinity divisors as
piecewise-linear derivative profiles, and their local Morse data.

Conventions
-----------
Every edge is parametrized tail -> head by t in [0, length]. A divisor stores,
per edge, the derivative f' of its local potential in that parametrization as a
continuous piecewise-linear profile. The outgoing slope of a half-edge is
f'(0) at the tail and -f'(length) at the head.

Local charts may differ by integral affine functions, so at a finite vertex the
outgoing slopes only have to sum to an integer (the vertex's chip number; it is
exactly 0 for a single global potential). At a leaf at infinity the endpoint
value is an integer m and the leaf's chart potential is f - m x, whose
derivative decays to 0.

A direction leaving an intersection point is ascending iff the profile has
positive slope on the adjacent segment, descending iff negative; a zero slope
there would be a constant integer plateau, which permissibility forbids.
"""
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import structlog

from trop_morse.core.exceptions import PermissibilityError, StructuralError
from trop_morse.geometry.graded import ZERO, GradedModule, direct_sum, euler, free

logger = structlog.get_logger()

TAIL = "tail"
HEAD = "head"


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class Vertex:
    id: str
    at_infinity: bool = False


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    length: Fraction = Fraction(1)

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class HalfEdge:
    """One end of an edge, seen from the vertex it is attached to"""

    edge: str
    end: str  # TAIL or HEAD

    @property
    def label(self) -> str:
        return f"{self.edge}:{self.end}"


@dataclass(frozen=True)
class TropicalCurve:
    """Finite multigraph with lengths; leaves may sit at infinity"""

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def vertex_map(self) -> Dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def half_edges(self, vertex_id: str) -> List[HalfEdge]:
        """Half-edges at a vertex in edge order; a loop contributes two"""
        result = []
        for e in self.edges:
            if e.tail == vertex_id:
                result.append(HalfEdge(e.id, TAIL))
            if e.head == vertex_id:
                result.append(HalfEdge(e.id, HEAD))
        return result

    def valence(self, vertex_id: str) -> int:
        return len(self.half_edges(vertex_id))

    def structural_errors(self) -> List[str]:
        """Reference and shape problems; empty for a well-formed curve"""
        errors: List[str] = []
        seen_vertices = set()
        for v in self.vertices:
            if v.id in seen_vertices:
                errors.append(f"duplicate vertex id {v.id!r}")
            seen_vertices.add(v.id)

        seen_edges = set()
        infinite = {v.id for v in self.vertices if v.at_infinity}
        for e in self.edges:
            if e.id in seen_edges:
                errors.append(f"duplicate edge id {e.id!r}")
            seen_edges.add(e.id)
            for end in (e.tail, e.head):
                if end not in seen_vertices:
                    errors.append(f"edge {e.id!r} cites unknown vertex {end!r}")
            if e.length <= 0:
                errors.append(f"edge {e.id!r} has non-positive length {e.length}")
            if e.tail in infinite and e.head in infinite:
                errors.append(f"edge {e.id!r} joins two vertices at infinity")

        for vid in sorted(infinite):
            if self.valence(vid) != 1:
                errors.append(
                    f"vertex {vid!r} at infinity has valence {self.valence(vid)}, expected 1"
                )
        return errors

    def components(self) -> List[List[str]]:
        """Vertex ids of each connected component, in vertex order"""
        parent = {v.id: v.id for v in self.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.tail)] = find(e.head)

        groups: Dict[str, List[str]] = defaultdict(list)
        for v in self.vertices:
            groups[find(v.id)].append(v.id)
        return list(groups.values())

    @property
    def genus(self) -> int:
        """First Betti number of the underlying graph"""
        return len(self.edges) - len(self.vertices) + len(self.components())


@dataclass(frozen=True)
class Profile:
    """Continuous PL function on [0, length] given by its breakpoints"""

    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "breakpoints",
            tuple((Fraction(t), Fraction(v)) for t, v in self.breakpoints),
        )

    @classmethod
    def linear(cls, length: Fraction, start: Fraction, end: Fraction) -> "Profile":
        return cls(((Fraction(0), Fraction(start)), (Fraction(length), Fraction(end))))

    @property
    def positions(self) -> List[Fraction]:
        return [t for t, _ in self.breakpoints]

    @property
    def values(self) -> List[Fraction]:
        return [v for _, v in self.breakpoints]

    @property
    def length(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def start(self) -> Fraction:
        return self.breakpoints[0][1]

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1][1]

    def shape_errors(self, length: Fraction) -> List[str]:
        errors = []
        if len(self.breakpoints) < 2:
            return ["needs at least two breakpoints"]
        if self.breakpoints[0][0] != 0:
            errors.append(f"first breakpoint at {self.breakpoints[0][0]}, expected 0")
        if self.length != length:
            errors.append(f"last breakpoint at {self.length}, expected edge length {length}")
        positions = self.positions
        if any(a >= b for a, b in zip(positions, positions[1:])):
            errors.append("breakpoint positions are not strictly increasing")
        return errors

    def segments(self) -> Iterator[Tuple[Fraction, Fraction, Fraction, Fraction]]:
        for (t0, v0), (t1, v1) in zip(self.breakpoints, self.breakpoints[1:]):
            yield t0, v0, t1, v1

    def value_at(self, t: Fraction) -> Fraction:
        positions = self.positions
        if t < positions[0] or t > positions[-1]:
            raise ValueError(f"position {t} outside [0, {self.length}]")
        i = bisect_left(positions, t)
        if positions[i] == t:
            return self.breakpoints[i][1]
        t0, v0 = self.breakpoints[i - 1]
        t1, v1 = self.breakpoints[i]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def slope_sign_before(self, t: Fraction) -> int:
        """Sign of the slope of the segment ending at (or containing) t"""
        i = bisect_left(self.positions, t)
        if i == 0 or i >= len(self.breakpoints):
            raise ValueError(f"no segment ending at {t}")
        return _sign(self.breakpoints[i][1] - self.breakpoints[i - 1][1])

    def slope_sign_after(self, t: Fraction) -> int:
        """Sign of the slope of the segment starting at (or containing) t"""
        i = bisect_right(self.positions, t)
        if i == 0 or i >= len(self.breakpoints):
            raise ValueError(f"no segment starting at {t}")
        return _sign(self.breakpoints[i][1] - self.breakpoints[i - 1][1])

    def integer_solutions(self) -> List[Fraction]:
        """Interior positions 0 < t < length where the profile is an integer.

        Constant segments never contribute; a constant integer segment is a
        permissibility violation reported by ``validate``.
        """
        found = set()
        length = self.length
        for t0, v0, t1, v1 in self.segments():
            if v0 == v1:
                continue
            lo, hi = min(v0, v1), max(v0, v1)
            m = -((-lo.numerator) // lo.denominator)  # ceil(lo)
            while m <= hi:
                t = t0 + (m - v0) * (t1 - t0) / (v1 - v0)
                if 0 < t < length:
                    found.add(t)
                m += 1
        return sorted(found)

    def restrict(self, a: Fraction, b: Fraction) -> "Profile":
        """The profile on [a, b], re-parametrized to start at 0"""
        if not 0 <= a < b <= self.length:
            raise ValueError(f"bad restriction [{a}, {b}] of [0, {self.length}]")
        points = [(Fraction(0), self.value_at(a))]
        points += [(t - a, v) for t, v in self.breakpoints if a < t < b]
        points.append((b - a, self.value_at(b)))
        return Profile(tuple(points))

    def negate(self) -> "Profile":
        return Profile(tuple((t, -v) for t, v in self.breakpoints))

    def scale(self, ratio: Fraction) -> "Profile":
        return Profile(tuple((t * ratio, v) for t, v in self.breakpoints))

    def __add__(self, other: "Profile") -> "Profile":
        if self.length != other.length:
            raise ValueError("profiles live on edges of different lengths")
        positions = sorted(set(self.positions) | set(other.positions))
        return Profile(tuple((t, self.value_at(t) + other.value_at(t)) for t in positions))


@dataclass(frozen=True)
class CurveDivisor:
    """Per-edge derivative profiles of the local potentials"""

    profiles: Mapping[str, Profile] = field(default_factory=dict)
    curve_name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "profiles", dict(self.profiles))

    def profile(self, edge_id: str) -> Profile:
        return self.profiles[edge_id]

    def outgoing(self, half: HalfEdge) -> Fraction:
        """Outgoing slope of the local potential along a half-edge"""
        profile = self.profiles[half.edge]
        return profile.start if half.end == TAIL else -profile.end

    def leaving_sign(self, half: HalfEdge) -> int:
        """+1 if the potential (minus its tangent covector) increases leaving
        the vertex along ``half``, -1 if it decreases, 0 on a flat segment"""
        profile = self.profiles[half.edge]
        if half.end == TAIL:
            return profile.slope_sign_after(Fraction(0))
        return profile.slope_sign_before(profile.length)


class PointKind(str, Enum):
    """Local crossing types of s0 and s"""

    VERTEX_STAR = "vertex-star"
    INFINITE_LEAF = "infinite-leaf"
    EDGE_UP = "edge-up"
    EDGE_DOWN = "edge-down"
    EDGE_TOUCH = "edge-touch"


@dataclass(frozen=True)
class IntersectionPoint:
    """A point of s0 cap s with its local type.

    ``ascending``/``descending`` count the directions along which the local
    potential increases/decreases; ``levels`` are the integer values of the
    outgoing slopes (one per direction at a vertex, one for an edge point).
    """

    kind: PointKind
    ascending: int
    descending: int
    levels: Tuple[int, ...]
    vertex: Optional[str] = None
    edge: Optional[str] = None
    position: Optional[Fraction] = None

    @property
    def level(self) -> int:
        return self.levels[0] if self.levels else 0

    @property
    def label(self) -> str:
        if self.vertex is not None:
            return f"v:{self.vertex}"
        return f"e:{self.edge}@{self.position}"

    @property
    def sort_key(self) -> tuple:
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.position)


@dataclass(frozen=True)
class Violation:
    code: str
    location: str
    detail: str


@dataclass
class ValidationReport:
    """Structural errors and permissibility violations of a (curve, divisor)"""

    structural: List[str] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_structurally_sound(self) -> bool:
        return not self.structural

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def codes(self) -> List[str]:
        return sorted({v.code for v in self.violations})

    def summary(self) -> str:
        lines = [f"structural: {s}" for s in self.structural]
        lines += [f"{v.code} at {v.location}: {v.detail}" for v in self.violations]
        return "; ".join(lines) if lines else "permissible"


@dataclass(frozen=True)
class RRCheck:
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def validate(curve: TropicalCurve, div: CurveDivisor) -> ValidationReport:
    """Check the divisor invariants exactly; empty report iff permissible"""
    report = ValidationReport(structural=curve.structural_errors())

    edges = curve.edge_map
    for edge_id in sorted(set(div.profiles) - set(edges)):
        report.structural.append(f"profile given for unknown edge {edge_id!r}")
    for e in curve.edges:
        if e.id not in div.profiles:
            report.structural.append(f"edge {e.id!r} has no profile")
            continue
        for problem in div.profiles[e.id].shape_errors(e.length):
            report.structural.append(f"edge {e.id!r}: {problem}")
    if report.structural:
        return report

    for v in curve.vertices:
        halves = curve.half_edges(v.id)
        slopes = [div.outgoing(h) for h in halves]
        if v.at_infinity:
            if not _is_integer(slopes[0]):
                report.violations.append(Violation(
                    "decay", f"v:{v.id}",
                    f"derivative {slopes[0]} at the infinite end is not an integer",
                ))
            continue
        if not _is_integer(sum(slopes, Fraction(0))):
            report.violations.append(Violation(
                "balance", f"v:{v.id}",
                f"outgoing slopes {[str(s) for s in slopes]} sum to {sum(slopes)}, not an integer",
            ))
        if len(halves) >= 3:
            bad = [f"{h.label}={s}" for h, s in zip(halves, slopes) if not _is_integer(s)]
            if bad:
                report.violations.append(Violation(
                    "prepermissibility", f"v:{v.id}",
                    f"non-integer outgoing slopes at a {len(halves)}-valent vertex: {', '.join(bad)}",
                ))

    for e in curve.edges:
        for t0, v0, t1, v1 in div.profiles[e.id].segments():
            if v0 == v1 and _is_integer(v0):
                report.violations.append(Violation(
                    "permissibility", f"e:{e.id}",
                    f"profile is constant {v0} on [{t0}, {t1}]; s0 cap s is infinite",
                ))
    return report


def require_permissible(curve: TropicalCurve, div: CurveDivisor) -> None:
    report = validate(curve, div)
    if report.structural:
        raise StructuralError("; ".join(report.structural), context={"report": report})
    if report.violations:
        raise PermissibilityError(report.summary(), report=report)


def _star_kind(ascending: int, descending: int) -> PointKind:
    """Kind of a 2-valent regular point from its direction counts"""
    if descending == 0:
        return PointKind.EDGE_UP
    if ascending == 0:
        return PointKind.EDGE_DOWN
    return PointKind.EDGE_TOUCH


def _vertex_point(curve: TropicalCurve, div: CurveDivisor, v: Vertex) -> Optional[IntersectionPoint]:
    halves = curve.half_edges(v.id)
    slopes = [div.outgoing(h) for h in halves]
    if len(halves) == 2 and not v.at_infinity and not _is_integer(slopes[0]):
        return None

    signs = [div.leaving_sign(h) for h in halves]
    ascending = sum(1 for s in signs if s > 0)
    descending = sum(1 for s in signs if s < 0)
    levels = tuple(int(s) for s in slopes)

    if v.at_infinity:
        kind = PointKind.INFINITE_LEAF
    elif len(halves) == 2:
        kind = _star_kind(ascending, descending)
    else:
        kind = PointKind.VERTEX_STAR
    return IntersectionPoint(kind, ascending, descending, levels, vertex=v.id)


def intersection_points(curve: TropicalCurve, div: CurveDivisor) -> List[IntersectionPoint]:
    """Enumerate s0 cap s with exact positions and local types"""
    require_permissible(curve, div)

    points: List[IntersectionPoint] = []
    for v in curve.vertices:
        point = _vertex_point(curve, div, v)
        if point is not None:
            points.append(point)

    for e in curve.edges:
        profile = div.profiles[e.id]
        for t in profile.integer_solutions():
            # leaving towards +t follows the profile, towards -t reverses it
            after = profile.slope_sign_after(t)
            before = profile.slope_sign_before(t)
            ascending = (after > 0) + (before > 0)
            descending = (after < 0) + (before < 0)
            points.append(IntersectionPoint(
                _star_kind(ascending, descending), ascending, descending,
                (int(profile.value_at(t)),), edge=e.id, position=t,
            ))

    points.sort(key=lambda p: p.sort_key)
    return points


def local_lmd(point: IntersectionPoint) -> GradedModule:
    """Local Morse data at a classified point"""
    if point.kind == PointKind.VERTEX_STAR:
        q = point.descending
        return free(0, 1) if q == 0 else free(1, q - 1)
    if point.kind == PointKind.INFINITE_LEAF:
        return free(0, 1) if point.ascending else ZERO
    if point.kind == PointKind.EDGE_UP:
        return free(0, 1)
    if point.kind == PointKind.EDGE_DOWN:
        return free(1, 1)
    return ZERO


def lmd(curve: TropicalCurve, div: CurveDivisor) -> GradedModule:
    return direct_sum(*(local_lmd(p) for p in intersection_points(curve, div)))


def _pieces(
    curve: TropicalCurve, div: CurveDivisor, points: Sequence[IntersectionPoint]
) -> List[Tuple[tuple, tuple, Fraction]]:
    """Split every edge at its interior intersection points.

    Returns (start node, end node, profile change) per piece, where a node is
    ("v", vertex id) or ("p", edge id, position).
    """
    cuts: Dict[str, List[Fraction]] = defaultdict(list)
    for p in points:
        if p.edge is not None:
            cuts[p.edge].append(p.position)

    pieces = []
    for e in curve.edges:
        profile = div.profiles[e.id]
        marks = [Fraction(0)] + sorted(cuts[e.id]) + [e.length]
        nodes = [("v", e.tail)] + [("p", e.id, t) for t in sorted(cuts[e.id])] + [("v", e.head)]
        for i in range(len(marks) - 1):
            change = profile.value_at(marks[i + 1]) - profile.value_at(marks[i])
            pieces.append((nodes[i], nodes[i + 1], change))
    return pieces


def rotation_number(curve: TropicalCurve, div: CurveDivisor) -> int:
    """Total integer winding of f' over the interval components of C minus s0 cap s.

    Pieces are glued across vertices that are not intersection points; a
    component whose closure meets no intersection point is a circle and
    contributes nothing. The change of the continuous lift of f' over a
    component is the sum of the per-piece changes, whatever the charts.
    """
    points = intersection_points(curve, div)
    cut_nodes = {("v", p.vertex) for p in points if p.vertex is not None}
    cut_nodes |= {("p", p.edge, p.position) for p in points if p.edge is not None}

    pieces = _pieces(curve, div, points)
    parent = list(range(len(pieces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    attached: Dict[tuple, List[int]] = defaultdict(list)
    for index, (start, end, _) in enumerate(pieces):
        for node in (start, end):
            if node not in cut_nodes:
                attached[node].append(index)
    for indices in attached.values():
        for other in indices[1:]:
            parent[find(other)] = find(indices[0])

    totals: Dict[int, Fraction] = defaultdict(Fraction)
    touches_cut: Dict[int, bool] = defaultdict(bool)
    for index, (start, end, change) in enumerate(pieces):
        root = find(index)
        totals[root] += change
        touches_cut[root] |= start in cut_nodes or end in cut_nodes

    rotation = sum((total for root, total in totals.items() if touches_cut[root]), Fraction(0))
    if rotation.denominator != 1:
        raise ArithmeticError(f"non-integral rotation number {rotation}")
    return int(rotation)


def chip_divisor(curve: TropicalCurve, div: CurveDivisor) -> Dict[str, int]:
    """Integer divisor of the class [s]: minus the outgoing-slope sum per vertex.

    These are the integral jumps between neighbouring charts; only nonzero
    entries are returned.
    """
    require_permissible(curve, div)
    chips = {}
    for v in curve.vertices:
        total = sum((div.outgoing(h) for h in curve.half_edges(v.id)), Fraction(0))
        if total:
            chips[v.id] = -int(total)
    return chips


def degree(curve: TropicalCurve, div: CurveDivisor) -> int:
    """deg([s]), the integral of c1([s]), summed from the chip divisor.

    Equals ``rotation_number`` for every permissible divisor.
    """
    return sum(chip_divisor(curve, div).values())


def chi_top(curve: TropicalCurve) -> int:
    return len(curve.vertices) - len(curve.edges)


def verify_rr(curve: TropicalCurve, div: CurveDivisor) -> RRCheck:
    """chi(LMD(C; s)) against deg([s]) + chi_top(C)"""
    lhs = euler(lmd(curve, div))
    rhs = degree(curve, div) + chi_top(curve)
    logger.debug("Curve Riemann-Roch evaluated", lhs=lhs, rhs=rhs)
    return RRCheck(lhs=lhs, rhs=rhs)


def negate(div: CurveDivisor) -> CurveDivisor:
    """The divisor -s (edgewise negation of every profile)"""
    return replace(div, profiles={k: p.negate() for k, p in div.profiles.items()})


def add_profiles(a: CurveDivisor, b: CurveDivisor) -> CurveDivisor:
    """s + s' on the common refinement of the breakpoints"""
    if set(a.profiles) != set(b.profiles):
        raise StructuralError("divisors live on different edge sets")
    return replace(a, profiles={k: a.profiles[k] + b.profiles[k] for k in a.profiles})


def scale_lengths(
    curve: TropicalCurve, div: CurveDivisor, ratio: Fraction
) -> Tuple[TropicalCurve, CurveDivisor]:
    """Rescale every edge length (and profile position) by a positive rational"""
    ratio = Fraction(ratio)
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    scaled_curve = replace(curve, edges=tuple(replace(e, length=e.length * ratio) for e in curve.edges))
    scaled_div = replace(div, profiles={k: p.scale(ratio) for k, p in div.profiles.items()})
    return scaled_curve, scaled_div


@dataclass(frozen=True)
class KodairaPattern:
    all_minimal: bool
    positive_degree_zero: bool
    negative_degree_one: bool


def kodaira_pattern(curve: TropicalCurve, div: CurveDivisor) -> KodairaPattern:
    """If every point of s is a local minimum, LMD(s) sits in degree 0 and
    LMD(-s) sits in degree 1 away from the leaves."""
    points = intersection_points(curve, div)
    all_minimal = all(p.descending == 0 for p in points)
    negative = negate(div)
    negative_finite = [
        local_lmd(p) for p in intersection_points(curve, negative)
        if p.kind != PointKind.INFINITE_LEAF
    ]
    return KodairaPattern(
        all_minimal=all_minimal,
        positive_degree_zero=lmd(curve, div).concentrated_in(0),
        negative_degree_one=direct_sum(*negative_finite).concentrated_in(1),
    )
