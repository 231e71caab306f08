"""
Lattice polytopes, Ehrhart polynomials, the log-polynomial potential f_P with
its tropical moment map, and the local Morse data of +-s_P on X_P.

Counting is exact integer arithmetic; floating point is confined to the
potential, the moment map and the Hessian.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog
from scipy.optimize import linprog
from scipy.spatial import ConvexHull
from scipy.special import logsumexp, softmax
from sympy import Matrix, Poly, Rational, interpolate, symbols

from trop_morse.core.exceptions import NotFullDimensionalError, StructuralError
from trop_morse.geometry.curve import CurveDivisor, Edge, Profile, TropicalCurve, Vertex
from trop_morse.geometry.graded import GradedModule, euler, free

logger = structlog.get_logger()

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class Facet:
    """The half-space normal . x <= offset"""

    normal: IntVector
    offset: int


@dataclass(frozen=True)
class LatticePolytope:
    n: int
    vertices: Tuple[IntVector, ...]
    facets: Tuple[Facet, ...]

    def __post_init__(self):
        vertices = tuple(tuple(int(x) for x in v) for v in self.vertices)
        facets = tuple(Facet(tuple(int(a) for a in f.normal), int(f.offset)) for f in self.facets)
        if not vertices:
            raise StructuralError("a polytope needs at least one vertex")
        for v in vertices:
            if len(v) != self.n:
                raise StructuralError(f"vertex {v} does not live in dimension {self.n}")
        for f in facets:
            if len(f.normal) != self.n:
                raise StructuralError(f"facet normal {f.normal} does not live in dimension {self.n}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "facets", facets)

    @property
    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets], dtype=np.int64).reshape(len(self.facets), self.n)

    @property
    def offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets], dtype=np.int64)

    def tight_facets(self, vertex: IntVector) -> List[int]:
        return [
            i for i, f in enumerate(self.facets)
            if sum(a * x for a, x in zip(f.normal, vertex)) == f.offset
        ]

    def contains(self, point: Sequence[int], k: int = 1, strict: bool = False) -> bool:
        for f in self.facets:
            value = sum(a * x for a, x in zip(f.normal, point))
            if value > k * f.offset or (strict and value == k * f.offset):
                return False
        return True


def cube(n: int) -> LatticePolytope:
    vertices = tuple(itertools.product((0, 1), repeat=n))
    facets = []
    for i in range(n):
        unit = tuple(1 if j == i else 0 for j in range(n))
        facets.append(Facet(unit, 1))
        facets.append(Facet(tuple(-x for x in unit), 0))
    return LatticePolytope(n, vertices, tuple(facets))


def standard_simplex(n: int) -> LatticePolytope:
    origin = (0,) * n
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    facets = [Facet(tuple(-x for x in u), 0) for u in units]
    facets.append(Facet((1,) * n, 1))
    return LatticePolytope(n, tuple([origin] + units), tuple(facets))


def segment(a: int, b: int) -> LatticePolytope:
    if a > b:
        raise StructuralError(f"empty segment [{a}, {b}]")
    return LatticePolytope(1, ((a,), (b,)) if a < b else ((a,),), (Facet((1,), b), Facet((-1,), -a)))


def dilate(polytope: LatticePolytope, k: int) -> LatticePolytope:
    if k < 1:
        raise ValueError(f"dilation factor must be positive, got {k}")
    return LatticePolytope(
        polytope.n,
        tuple(tuple(k * x for x in v) for v in polytope.vertices),
        tuple(Facet(f.normal, k * f.offset) for f in polytope.facets),
    )


def dimension(polytope: LatticePolytope) -> int:
    """Dimension of the affine hull of the vertices"""
    points = np.array(polytope.vertices, dtype=float)
    if len(points) == 1:
        return 0
    return int(np.linalg.matrix_rank(points[1:] - points[0]))


def is_full_dimensional(polytope: LatticePolytope) -> bool:
    return dimension(polytope) == polytope.n


def require_full_dimensional(polytope: LatticePolytope) -> None:
    if not is_full_dimensional(polytope):
        raise NotFullDimensionalError(
            f"polytope has dimension {dimension(polytope)} in R^{polytope.n}; "
            "interior lattice points and Delzant data need a full-dimensional polytope"
        )


def _box_grid(polytope: LatticePolytope, k: int) -> np.ndarray:
    points = np.array(polytope.vertices, dtype=np.int64) * k
    ranges = [np.arange(lo, hi + 1) for lo, hi in zip(points.min(axis=0), points.max(axis=0))]
    grid = np.array(np.meshgrid(*ranges, indexing="ij"), dtype=np.int64)
    return grid.reshape(polytope.n, -1).T


def _scan(polytope: LatticePolytope, k: int, strict: bool) -> List[IntVector]:
    if k < 0:
        raise ValueError(f"dilation factor must be nonnegative, got {k}")
    if k == 0:
        return [] if strict else [(0,) * polytope.n]
    candidates = _box_grid(polytope, k)
    values = candidates @ polytope.normals.T
    bounds = k * polytope.offsets
    mask = np.all(values < bounds, axis=1) if strict else np.all(values <= bounds, axis=1)
    return sorted(tuple(int(x) for x in row) for row in candidates[mask])


def lattice_points(polytope: LatticePolytope, k: int = 1) -> List[IntVector]:
    """Integer points of kP, sorted lexicographically"""
    return _scan(polytope, k, strict=False)


def interior_lattice_points(polytope: LatticePolytope, k: int = 1) -> List[IntVector]:
    """Integer points of int(kP); needs a full-dimensional P"""
    require_full_dimensional(polytope)
    return _scan(polytope, k, strict=True)


def boundary_lattice_points(polytope: LatticePolytope, k: int = 1) -> List[IntVector]:
    interior = set(interior_lattice_points(polytope, k))
    return [p for p in lattice_points(polytope, k) if p not in interior]


def _h_box(polytope: LatticePolytope) -> Optional[np.ndarray]:
    """Integer points of the bounding box of the H-polytope; None when unbounded"""
    if not polytope.facets:
        return None
    ranges = []
    for i in range(polytope.n):
        extremes = []
        for direction in (-1.0, 1.0):
            c = np.zeros(polytope.n)
            c[i] = direction
            result = linprog(
                c, A_ub=polytope.normals, b_ub=polytope.offsets, bounds=(None, None), method="highs"
            )
            if result.status != 0:
                return None
            extremes.append(result.x[i])
        hi, lo = extremes
        ranges.append(np.arange(int(np.ceil(lo - 1e-9)), int(np.floor(hi + 1e-9)) + 1))
    grid = np.array(np.meshgrid(*ranges, indexing="ij"), dtype=np.int64)
    return grid.reshape(polytope.n, -1).T


def _in_hull(vertices: Sequence[IntVector], point: Sequence[int]) -> bool:
    """Feasibility of point = sum lam_i v_i with lam >= 0 and sum lam = 1"""
    v = np.array(vertices, dtype=float)
    a_eq = np.vstack([v.T, np.ones(len(v))])
    b_eq = np.append(np.asarray(point, dtype=float), 1.0)
    result = linprog(np.zeros(len(v)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return result.status == 0


def cross_validate(polytope: LatticePolytope) -> List[str]:
    """Problems between the V-representation and the H-representation.

    Checks vertex feasibility, tightness (every facet at some vertex, every
    vertex on n facets when full-dimensional), and that every point of the
    integer bounding box lies in the H-polytope iff it lies in the hull of the
    vertices. A lower-dimensional hull is tested point by point with a
    convex-combination LP, which also rejects H-points off its affine hull.
    """
    problems = []
    for v in polytope.vertices:
        if not polytope.contains(v):
            problems.append(f"vertex {v} violates the facet inequalities")
    full = is_full_dimensional(polytope)
    for i, f in enumerate(polytope.facets):
        if not any(i in polytope.tight_facets(v) for v in polytope.vertices):
            problems.append(f"facet {f.normal}.x <= {f.offset} is tight at no vertex")
    if full:
        for v in polytope.vertices:
            if len(polytope.tight_facets(v)) < polytope.n:
                problems.append(f"vertex {v} lies on fewer than {polytope.n} facets")
    if problems:
        return problems

    box = _h_box(polytope)
    if box is None:
        return [f"facets {[f.normal for f in polytope.facets]} do not bound a polytope"]
    in_h = np.all(box @ polytope.normals.T <= polytope.offsets, axis=1)
    if not full:
        in_v = np.array([bool(h) and _in_hull(polytope.vertices, p) for p, h in zip(box, in_h)], dtype=bool)
    elif polytope.n == 1:
        lo, hi = min(polytope.vertices)[0], max(polytope.vertices)[0]
        in_v = (box[:, 0] >= lo) & (box[:, 0] <= hi)
    else:
        hull = ConvexHull(np.array(polytope.vertices, dtype=float))
        in_v = np.all(box @ hull.equations[:, :-1].T + hull.equations[:, -1] <= 1e-9, axis=1)
    for point in box[in_h != in_v]:
        problems.append(f"point {tuple(int(x) for x in point)} is in only one of the two representations")
    return problems


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Coefficients from the constant term up"""

    coefficients: Tuple[Fraction, ...]

    def __call__(self, k: int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * k + c
        return total

    @property
    def degree(self) -> int:
        nonzero = [i for i, c in enumerate(self.coefficients) if c]
        return nonzero[-1] if nonzero else 0


def ehrhart(polytope: LatticePolytope) -> EhrhartPolynomial:
    """Interpolate Ehr_P through the counts at k = 0..n (count 1 at k = 0)"""
    n = polytope.n
    data = [(k, len(lattice_points(polytope, k))) for k in range(n + 1)]
    x = symbols("x")
    poly = Poly(interpolate(data, x), x) if n else Poly(Rational(data[0][1]), x)
    coefficients = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    coefficients += [Fraction(0)] * (n + 1 - len(coefficients))
    return EhrhartPolynomial(tuple(coefficients))


@dataclass(frozen=True)
class ReciprocityCheck:
    k: int
    signed_value: Fraction  # (-1)^n Ehr_P(-k)
    interior_count: int

    @property
    def ok(self) -> bool:
        return self.signed_value == self.interior_count


def verify_reciprocity(polytope: LatticePolytope, kmax: int) -> List[ReciprocityCheck]:
    """(-1)^n Ehr_P(-k) against #int(kP) for k = 1..kmax"""
    require_full_dimensional(polytope)
    poly = ehrhart(polytope)
    sign = (-1) ** polytope.n
    return [
        ReciprocityCheck(k, sign * poly(-k), len(interior_lattice_points(polytope, k)))
        for k in range(1, kmax + 1)
    ]


@dataclass(frozen=True)
class LogPolynomial:
    """f_P(x) = log sum_{m in P cap Z^n} exp<m, x>, all coefficients a_u = 0"""

    exponents: Tuple[IntVector, ...]

    @property
    def coefficients(self) -> Tuple[float, ...]:
        return (0.0,) * len(self.exponents)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.exponents, dtype=float)


@lru_cache(maxsize=64)
def potential(polytope: LatticePolytope) -> LogPolynomial:
    exponents = tuple(lattice_points(polytope))
    if not exponents:
        raise StructuralError("P has no lattice points; f_P is undefined")
    return LogPolynomial(exponents)


def _weights(polytope: LatticePolytope, x: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    m = potential(polytope).matrix
    return m, softmax(m @ np.asarray(x, dtype=float))


def eval_f(polytope: LatticePolytope, x: Sequence[float]) -> float:
    m = potential(polytope).matrix
    return float(logsumexp(m @ np.asarray(x, dtype=float)))


def moment_map(polytope: LatticePolytope, x: Sequence[float]) -> np.ndarray:
    """Softmax-weighted average of the lattice points; the gradient of f_P"""
    m, w = _weights(polytope, x)
    return w @ m


def hessian(polytope: LatticePolytope, x: Sequence[float]) -> np.ndarray:
    """Weighted covariance of the lattice points"""
    m, w = _weights(polytope, x)
    centered = m - w @ m
    return (centered * w[:, None]).T @ centered


@dataclass(frozen=True)
class ToricLMD:
    sign: int
    lmd: GradedModule
    euler: int


def toric_lmd(polytope: LatticePolytope, sign: int) -> ToricLMD:
    """LMD of s_P (sign +1) or -s_P (sign -1) on X_P.

    For +s_P every lattice point of P is a minimum of f_{P,p}: one generator in
    degree 0 each. For -s_P an interior lattice point is a maximum and
    contributes one generator in degree n; boundary points contribute nothing.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    require_full_dimensional(polytope)
    if sign == 1:
        module = free(0, len(lattice_points(polytope)))
    else:
        module = free(polytope.n, len(interior_lattice_points(polytope)))
    return ToricLMD(sign, module, euler(module))


def edges(polytope: LatticePolytope) -> List[Tuple[IntVector, IntVector]]:
    """Vertex pairs whose common tight facets have normals of rank n - 1"""
    require_full_dimensional(polytope)
    tight = {v: set(polytope.tight_facets(v)) for v in polytope.vertices}
    normals = polytope.normals
    result = []
    for u, w in itertools.combinations(polytope.vertices, 2):
        common = sorted(tight[u] & tight[w])
        rank = int(np.linalg.matrix_rank(normals[common])) if common else 0
        if rank == polytope.n - 1:
            result.append((u, w))
    return result


def _primitive(vector: Sequence[int]) -> IntVector:
    g = 0
    for x in vector:
        g = gcd(g, x)
    return tuple(x // g for x in vector)


def delzant_check(polytope: LatticePolytope) -> bool:
    """Every vertex has n edges whose primitive directions form a basis of Z^n"""
    require_full_dimensional(polytope)
    incident = {v: [] for v in polytope.vertices}
    for u, w in edges(polytope):
        incident[u].append(_primitive([b - a for a, b in zip(u, w)]))
        incident[w].append(_primitive([a - b for a, b in zip(u, w)]))
    for v, directions in incident.items():
        if len(directions) != polytope.n:
            logger.debug("Vertex is not simple", vertex=v, edges=len(directions))
            return False
        det = int(Matrix(directions).det())
        if abs(det) != 1:
            logger.debug("Edge directions are not a lattice basis", vertex=v, det=det)
            return False
    return True


def segment_divisor(polytope: LatticePolytope) -> Tuple[TropicalCurve, CurveDivisor]:
    """TP^1 = X_P for P = [a, b] with a PL model of f_P'.

    The derivative of f_P rises from a at -infinity to b at +infinity. The line
    is two edges through a finite 2-valent vertex where the profile passes
    a + 1/2, so the lattice crossings a+1, ..., b-1 are edge-interior points
    and its curve LMD matches toric_lmd(P, +1).
    """
    if polytope.n != 1:
        raise StructuralError("segment_divisor needs a polytope in R^1")
    a, b = min(polytope.vertices)[0], max(polytope.vertices)[0]
    if a == b:
        raise NotFullDimensionalError(f"[{a}, {b}] is a point; its profile would be constant")
    middle = Fraction(2 * a + 1, 2)
    curve = TropicalCurve(
        (Vertex("-inf", at_infinity=True), Vertex("o"), Vertex("+inf", at_infinity=True)),
        (
            Edge("left", "-inf", "o", Fraction(1, 2)),
            Edge("right", "o", "+inf", b - middle),
        ),
    )
    profiles = {
        "left": Profile.linear(Fraction(1, 2), Fraction(a), middle),
        "right": Profile.linear(b - middle, middle, Fraction(b)),
    }
    return curve, CurveDivisor(profiles, f"segment[{a},{b}]")
