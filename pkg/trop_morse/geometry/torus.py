"""
Quadratic C-infinity divisors on integral affine tori R^n / Z^n.

A divisor is given by the linear part of its differential, x -> Mx + c, with M
a symmetric integer matrix and c a rational shift. Its sections meet the zero
section where Mx + c lies in Z^n.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from trop_morse.core.exceptions import DegenerateDivisorError, StructuralError
from trop_morse.geometry.graded import ZERO, GradedModule, euler, free

logger = structlog.get_logger()

IntMatrix = Tuple[Tuple[int, ...], ...]
Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class TorusQuadraticDivisor:
    matrix: IntMatrix
    shift: Tuple[Fraction, ...]

    def __post_init__(self):
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(matrix)
        shift = tuple(Fraction(x) for x in self.shift) if self.shift else (Fraction(0),) * n
        if any(len(row) != n for row in matrix):
            raise StructuralError(f"matrix must be square, got rows of lengths {[len(r) for r in matrix]}")
        if len(shift) != n:
            raise StructuralError(f"shift has {len(shift)} entries for dimension {n}")
        if any(matrix[i][j] != matrix[j][i] for i in range(n) for j in range(n)):
            raise StructuralError("matrix must be symmetric")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "shift", shift)

    @classmethod
    def diagonal(cls, *entries: int) -> "TorusQuadraticDivisor":
        n = len(entries)
        return cls(
            tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)),
            (Fraction(0),) * n,
        )

    @property
    def n(self) -> int:
        return len(self.matrix)

    def sympy_matrix(self) -> Matrix:
        return Matrix(self.matrix)


@dataclass(frozen=True)
class TorusLMDReport:
    count: Optional[int]  # None when degenerate (infinitely many intersections)
    index: int
    lmd: GradedModule
    euler: int
    chern_volume: int
    degenerate: bool


@dataclass(frozen=True)
class HesseCheck:
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def determinant(d: TorusQuadraticDivisor) -> int:
    """Exact det M (fraction-free Bareiss)"""
    if d.n == 0:
        return 1
    return int(d.sympy_matrix().det(method="bareiss"))


def lattice_quotient_order(matrix: Sequence[Sequence[int]]) -> int:
    """Order of Z^n / M Z^n from the Smith normal form; 0 when infinite"""
    n = len(matrix)
    if n == 0:
        return 1
    snf = smith_normal_form(Matrix(matrix), domain=ZZ)
    return abs(prod(int(snf[i, i]) for i in range(n)))


def intersection_count(d: TorusQuadraticDivisor) -> Optional[int]:
    """Number of solutions of Mx + c = 0 mod Z^n, or None if det M = 0.

    The shift only translates the solution set, so this is |Z^n / M Z^n|.
    """
    order = lattice_quotient_order(d.matrix)
    return order if order else None


def _inverse(d: TorusQuadraticDivisor) -> List[List[Fraction]]:
    inverse = d.sympy_matrix().inv()
    return [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(d.n)] for i in range(d.n)]


def _mod_one(point: Sequence[Fraction]) -> Point:
    return tuple(x - (x.numerator // x.denominator) for x in point)


def intersection_points(d: TorusQuadraticDivisor) -> List[Point]:
    """Exact solutions of Mx + c = 0 mod Z^n in [0, 1)^n, sorted.

    The solutions form the coset -M^{-1}c + M^{-1}Z^n / Z^n; the group part is
    generated by the columns of M^{-1} and closed up by breadth-first search.
    """
    if determinant(d) == 0:
        raise DegenerateDivisorError("det M = 0: the sections meet in a positive-dimensional set")
    n = d.n
    inverse = _inverse(d)
    generators = [_mod_one([inverse[i][j] for i in range(n)]) for j in range(n)]

    zero: Point = (Fraction(0),) * n
    group = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = _mod_one([a + b for a, b in zip(p, g)])
                if q not in group:
                    group.add(q)
                    nxt.append(q)
        frontier = nxt

    base = [-sum(inverse[i][j] * d.shift[j] for j in range(n)) for i in range(n)]
    return sorted(_mod_one([a + b for a, b in zip(base, p)]) for p in group)


def brute_force_count(d: TorusQuadraticDivisor) -> int:
    """Coset enumeration oracle: #{y in (1/det M)Z^n mod Z^n : My in Z^n}.

    Every solution differs from a fixed one by such a y. Cost is |det M|^n.
    """
    det = abs(determinant(d))
    if det == 0:
        raise DegenerateDivisorError("brute force needs det M != 0")
    n = d.n
    if n == 0:
        return 1
    numerators = np.array(np.meshgrid(*[np.arange(det)] * n, indexing="ij"), dtype=np.int64).reshape(n, -1)
    residues = (np.array(d.matrix, dtype=np.int64) @ numerators) % det
    return int(np.count_nonzero(np.all(residues == 0, axis=0)))


def morse_index(d: TorusQuadraticDivisor) -> int:
    """Number of negative eigenvalues of M, by exact symmetric pivoting.

    LDL^T over the rationals with symmetric permutations; when every remaining
    diagonal entry is zero a 2x2 block [[0, b], [b, 0]] (one positive, one
    negative eigenvalue) is eliminated instead. Sylvester's law makes the
    count of negative pivots the index.
    """
    a = [[Fraction(x) for x in row] for row in d.matrix]
    negatives = 0
    while a:
        size = len(a)
        pivot = next((i for i in range(size) if a[i][i] != 0), None)
        if pivot is not None:
            order = [pivot] + [i for i in range(size) if i != pivot]
            a = [[a[i][j] for j in order] for i in order]
            p = a[0][0]
            if p < 0:
                negatives += 1
            a = [
                [a[i][j] - a[i][0] * a[0][j] / p for j in range(1, size)]
                for i in range(1, size)
            ]
            continue

        pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if a[i][j] != 0), None)
        if pair is None:
            raise DegenerateDivisorError("det M = 0: a zero block remains after pivoting")
        i, j = pair
        order = [i, j] + [k for k in range(size) if k not in pair]
        a = [[a[r][s] for s in order] for r in order]
        b = a[0][1]
        negatives += 1
        # Schur complement of the block [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]]
        a = [
            [a[r][s] - (a[r][0] * a[1][s] + a[r][1] * a[0][s]) / b for s in range(2, size)]
            for r in range(2, size)
        ]
    return negatives


def lmd(d: TorusQuadraticDivisor) -> TorusLMDReport:
    """Local Morse data of the quadratic divisor.

    Every intersection point is a nondegenerate critical point of
    q_s - <m, x> with Hessian M, so each contributes Z in degree n_-(M).
    A singular M is reported as degenerate with zero LMD: a small perturbation
    of the section separates it from the zero section.
    """
    count = intersection_count(d)
    det = determinant(d)
    if count is None:
        return TorusLMDReport(None, 0, ZERO, 0, det, True)
    index = morse_index(d)
    module = free(index, count)
    return TorusLMDReport(count, index, module, euler(module), det, False)


def verify_hesse_rr(d: TorusQuadraticDivisor) -> HesseCheck:
    """chi(LMD(T; s)) against c1([s])^n / n! = det M on the torus"""
    report = lmd(d)
    return HesseCheck(lhs=report.euler, rhs=determinant(d))


def bohr_sommerfeld_count(lattice: Sequence[Sequence[int]]) -> int:
    """Bohr-Sommerfeld points of R^n / L Z^n: |Z^n / L Z^n| = vol(B)"""
    rows = [len(r) for r in lattice]
    if any(r != len(lattice) for r in rows):
        raise StructuralError(f"lattice matrix must be square, got rows of lengths {rows}")
    order = lattice_quotient_order(lattice)
    if order == 0:
        raise DegenerateDivisorError("the lattice matrix is singular")
    return order


def change_basis(d: TorusQuadraticDivisor, unimodular: Sequence[Sequence[int]]) -> TorusQuadraticDivisor:
    """The same divisor in the lattice basis given by the columns of U"""
    u = Matrix(unimodular)
    if abs(u.det()) != 1:
        raise StructuralError("change of basis must be unimodular")
    m = u.T * d.sympy_matrix() * u
    shift = [sum(int(u[j, i]) * d.shift[j] for j in range(d.n)) for i in range(d.n)]
    return TorusQuadraticDivisor(
        tuple(tuple(int(m[i, j]) for j in range(d.n)) for i in range(d.n)),
        tuple(shift),
    )


def block_diagonal(a: TorusQuadraticDivisor, b: TorusQuadraticDivisor) -> TorusQuadraticDivisor:
    """The product divisor on the product torus"""
    n = a.n + b.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < a.n and j < a.n:
                row.append(a.matrix[i][j])
            elif i >= a.n and j >= a.n:
                row.append(b.matrix[i - a.n][j - a.n])
            else:
                row.append(0)
        rows.append(tuple(row))
    return TorusQuadraticDivisor(tuple(rows), a.shift + b.shift)
