"""
Cutting a curve at intersection points and checking the Meyer-Vietoris
identities for chi(LMD) and the rotation number.
"""
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

import structlog

from trop_morse.core.exceptions import PermissibilityError
from trop_morse.geometry.curve import (
    CurveDivisor,
    Edge,
    IntersectionPoint,
    TropicalCurve,
    Vertex,
    chi_top,
    intersection_points,
    lmd,
    rotation_number,
)
from trop_morse.geometry.graded import euler

logger = structlog.get_logger()

Part = Tuple[TropicalCurve, CurveDivisor]


@dataclass
class SplitResult:
    parts: List[Part]
    cut: List[IntersectionPoint]
    euler_whole: int
    euler_parts: List[int]
    rotation_whole: int
    rotation_parts: List[int]
    chi_top_whole: int
    chi_top_parts: List[int]
    correction: int = 0  # sum over cut points of (valence - 1)
    labels: List[str] = field(default_factory=list)

    @property
    def euler_ok(self) -> bool:
        return self.euler_whole == sum(self.euler_parts) - self.correction

    @property
    def rotation_ok(self) -> bool:
        return self.rotation_whole == sum(self.rotation_parts)

    @property
    def chi_top_ok(self) -> bool:
        return self.chi_top_whole == sum(self.chi_top_parts) - self.correction

    @property
    def identity_ok(self) -> bool:
        return self.euler_ok and self.rotation_ok and self.chi_top_ok


def _resolve_cut(
    points: List[IntersectionPoint], cut: Iterable[Union[IntersectionPoint, str]]
) -> List[IntersectionPoint]:
    by_label = {p.label: p for p in points}
    resolved = []
    for item in cut:
        label = item.label if isinstance(item, IntersectionPoint) else item
        if label not in by_label:
            raise PermissibilityError(
                f"cut point {label} is not in s0 cap s; the pieces would not meet inside it"
            )
        resolved.append(by_label[label])
    return sorted(set(resolved), key=lambda p: p.sort_key)


def split_curve(
    curve: TropicalCurve, div: CurveDivisor, cut: Iterable[Union[IntersectionPoint, str]]
) -> Tuple[List[Part], List[IntersectionPoint], Dict[str, int]]:
    """Open the curve up at the cut points.

    Edges are subdivided at interior cut positions, and every half-edge at a
    cut point gets its own endpoint. Returns the connected pieces, the resolved
    cut points and the valence of each cut point in ``curve``.
    """
    points = intersection_points(curve, div)
    cut_points = _resolve_cut(points, cut)

    interior: Dict[str, List[Fraction]] = defaultdict(list)
    cut_vertices = set()
    for p in cut_points:
        if p.edge is not None:
            interior[p.edge].append(p.position)
            cut_vertices.add(f"{p.edge}@{p.position}")
        else:
            cut_vertices.add(p.vertex)

    vertices: Dict[str, Vertex] = {v.id: v for v in curve.vertices}
    edges: List[Edge] = []
    profiles = {}
    for e in curve.edges:
        profile = div.profiles[e.id]
        marks = [Fraction(0)] + sorted(interior[e.id]) + [e.length]
        if len(marks) == 2:
            edges.append(e)
            profiles[e.id] = profile
            continue
        ends = [e.tail] + [f"{e.id}@{t}" for t in marks[1:-1]] + [e.head]
        for t in marks[1:-1]:
            vertices[f"{e.id}@{t}"] = Vertex(f"{e.id}@{t}")
        for i in range(len(marks) - 1):
            piece_id = f"{e.id}#{i}"
            edges.append(Edge(piece_id, ends[i], ends[i + 1], marks[i + 1] - marks[i]))
            profiles[piece_id] = profile.restrict(marks[i], marks[i + 1])

    subdivided = TropicalCurve(tuple(vertices.values()), tuple(edges))
    valences = {x: subdivided.valence(x) for x in cut_vertices}

    # every half-edge at a cut vertex of valence >= 2 gets its own endpoint
    opened = {x for x, valence in valences.items() if valence > 1}
    detached_vertices = [v for v in vertices.values() if v.id not in opened]
    detached_edges = []
    for e in edges:
        tail, head = e.tail, e.head
        if tail in opened:
            tail = f"{tail}|{e.id}:tail"
            detached_vertices.append(Vertex(tail))
        if head in opened:
            head = f"{head}|{e.id}:head"
            detached_vertices.append(Vertex(head))
        detached_edges.append(Edge(e.id, tail, head, e.length))
    detached = TropicalCurve(tuple(detached_vertices), tuple(detached_edges))

    parts: List[Part] = []
    for component in detached.components():
        members = set(component)
        part_vertices = tuple(v for v in detached.vertices if v.id in members)
        part_edges = tuple(e for e in detached.edges if e.tail in members)
        part_div = CurveDivisor({e.id: profiles[e.id] for e in part_edges}, div.curve_name)
        parts.append((TropicalCurve(part_vertices, part_edges), part_div))

    return parts, cut_points, valences


def split_verify(
    curve: TropicalCurve, div: CurveDivisor, cut: Iterable[Union[IntersectionPoint, str]]
) -> SplitResult:
    """Cut, recompute on every piece, and compare with the whole curve"""
    parts, cut_points, valences = split_curve(curve, div, cut)
    result = SplitResult(
        parts=parts,
        cut=cut_points,
        euler_whole=euler(lmd(curve, div)),
        euler_parts=[euler(lmd(c, d)) for c, d in parts],
        rotation_whole=rotation_number(curve, div),
        rotation_parts=[rotation_number(c, d) for c, d in parts],
        chi_top_whole=chi_top(curve),
        chi_top_parts=[chi_top(c) for c, _ in parts],
        correction=sum(max(v - 1, 0) for v in valences.values()),
        labels=[p.label for p in cut_points],
    )
    logger.debug(
        "Split evaluated",
        parts=len(parts),
        cut=len(cut_points),
        identity_ok=result.identity_ok,
    )
    return result


def random_split(curve: TropicalCurve, div: CurveDivisor, seed: int) -> SplitResult:
    """Cut at a random subset of s0 cap s"""
    rng = random.Random(seed)
    points = intersection_points(curve, div)
    chosen = [p for p in points if rng.random() < 0.5]
    return split_verify(curve, div, chosen)
