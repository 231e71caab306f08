"""
Products, covers and symmetric powers of local Morse data
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple

import structlog

from trop_morse.core.exceptions import StructuralError
from trop_morse.geometry import curve as curves
from trop_morse.geometry import toric, torus
from trop_morse.geometry.curve import CurveDivisor, Edge, TropicalCurve, Vertex
from trop_morse.geometry.graded import (
    ZERO,
    GradedModule,
    direct_sum,
    euler,
    free,
    series_product,
    sym_euler,
    sym_series,
    tensor,
)

logger = structlog.get_logger()


@dataclass(frozen=True)
class IndexedPointSet:
    """Per-point local Morse data of one divisor"""

    points: Tuple[Tuple[str, GradedModule], ...] = ()

    def __post_init__(self):
        points = tuple(self.points)
        labels = [label for label, _ in points]
        if len(set(labels)) != len(labels):
            raise StructuralError("point labels must be unique")
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.points]

    @property
    def eulers(self) -> List[int]:
        return [euler(m) for _, m in self.points]

    @property
    def euler(self) -> int:
        return sum(self.eulers)


def from_curve(curve: TropicalCurve, div: CurveDivisor) -> IndexedPointSet:
    return IndexedPointSet(tuple(
        (p.label, curves.local_lmd(p)) for p in curves.intersection_points(curve, div)
    ))


def _point_label(point: Iterable) -> str:
    return "(" + ",".join(str(x) for x in point) + ")"


def from_torus(d: torus.TorusQuadraticDivisor) -> IndexedPointSet:
    """One Z[-index] per solution of Mx + c = 0 mod Z^n; empty when degenerate"""
    report = torus.lmd(d)
    if report.degenerate:
        return IndexedPointSet()
    return IndexedPointSet(tuple(
        (_point_label(p), free(report.index, 1)) for p in torus.intersection_points(d)
    ))


def from_toric(polytope: toric.LatticePolytope, sign: int) -> IndexedPointSet:
    """Lattice points of P with their LMD for +s_P or -s_P; P must be full-dimensional"""
    toric.require_full_dimensional(polytope)
    if sign == 1:
        return IndexedPointSet(tuple((_point_label(p), free(0, 1)) for p in toric.lattice_points(polytope)))
    interior = set(toric.interior_lattice_points(polytope))
    return IndexedPointSet(tuple(
        (_point_label(p), free(polytope.n, 1) if p in interior else ZERO)
        for p in toric.lattice_points(polytope)
    ))


def kunneth(a: IndexedPointSet, b: IndexedPointSet) -> IndexedPointSet:
    """LMD of s boxtimes s' on the product: one point per pair, tensor of the factors"""
    return IndexedPointSet(tuple(
        (f"({la},{lb})", tensor(ma, mb)) for la, ma in a.points for lb, mb in b.points
    ))


@dataclass(frozen=True)
class ProductCheck:
    product_euler: int
    factor_a: int  # deg + chi_top of the first factor
    factor_b: int

    @property
    def ok(self) -> bool:
        return self.product_euler == self.factor_a * self.factor_b


def verify_product_rr(
    curve_a: TropicalCurve, div_a: CurveDivisor, curve_b: TropicalCurve, div_b: CurveDivisor
) -> ProductCheck:
    """chi of the Kunneth product against the product of the curve RR sides"""
    product = kunneth(from_curve(curve_a, div_a), from_curve(curve_b, div_b))
    return ProductCheck(
        product_euler=product.euler,
        factor_a=curves.degree(curve_a, div_a) + curves.chi_top(curve_a),
        factor_b=curves.degree(curve_b, div_b) + curves.chi_top(curve_b),
    )


@dataclass(frozen=True)
class TorusProductCheck:
    """Kunneth product of two tori against the LMD of the block-diagonal divisor"""

    product: IndexedPointSet
    block: torus.TorusLMDReport

    @property
    def product_lmd(self) -> GradedModule:
        return direct_sum(*(m for _, m in self.product.points))

    @property
    def ok(self) -> bool:
        if self.block.degenerate:
            return self.product_lmd.is_zero
        return self.product_lmd == self.block.lmd and len(self.product) == self.block.count


def verify_torus_product(a: torus.TorusQuadraticDivisor, b: torus.TorusQuadraticDivisor) -> TorusProductCheck:
    """Count, index and graded module of s boxtimes s' on T x T' against diag(M, M')"""
    return TorusProductCheck(
        product=kunneth(from_torus(a), from_torus(b)),
        block=torus.lmd(torus.block_diagonal(a, b)),
    )


class CoverMode(str, Enum):
    DISJOINT = "disjoint"
    CYCLIC = "cyclic"


def _require_circle(curve: TropicalCurve) -> None:
    if (
        len(curve.components()) != 1
        or len(curve.edges) != len(curve.vertices)
        or any(v.at_infinity or curve.valence(v.id) != 2 for v in curve.vertices)
    ):
        raise StructuralError("a cyclic cover needs a single circle (every vertex finite and 2-valent)")


def cyclic_cover(curve: TropicalCurve, div: CurveDivisor, d: int) -> Tuple[TropicalCurve, CurveDivisor]:
    """Connected d-fold cover of a circle: the first edge is the seam where
    sheet i continues into sheet i + 1; profiles are replicated on every sheet."""
    _require_circle(curve)
    if d < 1:
        raise ValueError(f"cover degree must be positive, got {d}")
    seam = curve.edges[0].id
    vertices = tuple(Vertex(f"{v.id}.{i}") for i in range(d) for v in curve.vertices)
    edges = []
    profiles = {}
    for i in range(d):
        for e in curve.edges:
            step = 1 if e.id == seam else 0
            lifted = f"{e.id}.{i}"
            edges.append(Edge(lifted, f"{e.tail}.{i}", f"{e.head}.{(i + step) % d}", e.length))
            profiles[lifted] = div.profiles[e.id]
    return TropicalCurve(vertices, tuple(edges)), CurveDivisor(profiles, div.curve_name)


def etale_scale(
    points: IndexedPointSet,
    d: int,
    mode: CoverMode = CoverMode.DISJOINT,
    base: Optional[Tuple[TropicalCurve, CurveDivisor]] = None,
) -> IndexedPointSet:
    """LMD on a degree-d etale cover: d disjoint copies, or the recomputed
    cyclic cover of a circle (``base`` carries the circle and its divisor)"""
    if d < 1:
        raise ValueError(f"cover degree must be positive, got {d}")
    if CoverMode(mode) == CoverMode.DISJOINT:
        return IndexedPointSet(tuple(
            (label if d == 1 else f"{label}#{i}", m) for i in range(d) for label, m in points.points
        ))
    if base is None:
        raise StructuralError("cyclic covers need the base circle and its divisor")
    cover_curve, cover_div = cyclic_cover(*base, d)
    cover = from_curve(cover_curve, cover_div)
    logger.debug("Cyclic cover computed", degree=d, base_euler=points.euler, cover_euler=cover.euler)
    return cover


@dataclass(frozen=True)
class SymCheck:
    n: int
    formula: int
    oracle: int

    @property
    def ok(self) -> bool:
        return self.formula == self.oracle


def verify_sym(points: IndexedPointSet, n: int) -> SymCheck:
    """Macdonald-type formula C(n + chi - 1, n) against the product over points
    of (1 - t)^(-chi_p), expanded exactly"""
    series = [1] + [0] * n
    for chi in points.eulers:
        series = series_product(series, sym_series(chi, n))
    return SymCheck(n=n, formula=sym_euler(points.euler, n), oracle=series[n])
