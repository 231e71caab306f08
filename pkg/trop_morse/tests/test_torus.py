import random
from fractions import Fraction

import numpy as np
import pytest

from trop_morse.core.exceptions import DegenerateDivisorError, StructuralError
from trop_morse.geometry import torus
from trop_morse.geometry.graded import ZERO, free
from trop_morse.geometry.torus import TorusQuadraticDivisor


def _random_symmetric(rng, n):
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            matrix[i][j] = matrix[j][i] = rng.randint(-5, 5)
    return matrix


def _random_divisors(count, seed):
    rng = random.Random(seed)
    found = 0
    while found < count:
        n = rng.randint(1, 4)
        d = TorusQuadraticDivisor(
            _random_symmetric(rng, n), tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(n))
        )
        if torus.determinant(d) != 0:
            found += 1
            yield d


def test_diagonal_divisor():
    d = TorusQuadraticDivisor.diagonal(2, 3)
    report = torus.lmd(d)
    assert report.count == 6
    assert report.index == 0
    assert report.lmd == free(0, 6)
    assert report.euler == 6 == torus.determinant(d)
    assert torus.verify_hesse_rr(d).ok


def test_indefinite_and_negative_definite():
    assert torus.lmd(TorusQuadraticDivisor.diagonal(-2, 3)).euler == -6
    report = torus.lmd(TorusQuadraticDivisor.diagonal(-1, -1))
    assert (report.count, report.index, report.euler) == (1, 2, 1)


def test_hyperbolic_block_index():
    d = TorusQuadraticDivisor(((0, 2), (2, 0)), ())
    assert torus.morse_index(d) == 1
    assert torus.lmd(d).euler == torus.determinant(d) == -4


def test_degenerate_divisor():
    d = TorusQuadraticDivisor.diagonal(0, 1)
    report = torus.lmd(d)
    assert report.degenerate
    assert report.count is None
    assert report.lmd == ZERO
    assert torus.verify_hesse_rr(d).ok
    with pytest.raises(DegenerateDivisorError):
        torus.intersection_points(d)
    with pytest.raises(DegenerateDivisorError):
        torus.brute_force_count(d)


def test_intersection_points_are_exact():
    d = TorusQuadraticDivisor(((2,),), (Fraction(1, 3),))
    assert torus.intersection_points(d) == [(Fraction(1, 3),), (Fraction(5, 6),)]


def test_shift_does_not_change_the_count():
    plain = TorusQuadraticDivisor(((2, 1), (1, 3)), ())
    shifted = TorusQuadraticDivisor(((2, 1), (1, 3)), (Fraction(1, 2), Fraction(-2, 7)))
    assert torus.intersection_count(plain) == torus.intersection_count(shifted) == 5


def test_random_matrices_match_determinant():
    for d in _random_divisors(100, seed=2024):
        det = torus.determinant(d)
        report = torus.lmd(d)
        assert report.euler == det
        assert report.count == abs(det)
        assert report.index == int(np.sum(np.linalg.eigvalsh(np.array(d.matrix, dtype=float)) < 0))
        if abs(det) <= 24:
            assert torus.brute_force_count(d) == abs(det)
            assert len(torus.intersection_points(d)) == abs(det)


def test_change_of_basis_is_invariant():
    d = TorusQuadraticDivisor(((2, 1), (1, 3)), (Fraction(1, 2), 0))
    moved = torus.change_basis(d, [[1, 1], [0, 1]])
    assert torus.determinant(moved) == torus.determinant(d)
    assert torus.lmd(moved).lmd == torus.lmd(d).lmd
    with pytest.raises(StructuralError):
        torus.change_basis(d, [[2, 0], [0, 1]])


def test_block_diagonal_multiplies_euler():
    a = TorusQuadraticDivisor.diagonal(-2)
    b = TorusQuadraticDivisor(((2, 1), (1, 3)), ())
    product = torus.block_diagonal(a, b)
    assert product.n == 3
    assert torus.lmd(product).euler == torus.lmd(a).euler * torus.lmd(b).euler == -10


def test_bohr_sommerfeld_random_lattices():
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        n = rng.randint(1, 4)
        lattice = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        det = round(np.linalg.det(np.array(lattice, dtype=float)))
        if det == 0:
            continue
        assert torus.bohr_sommerfeld_count(lattice) == abs(det)
        checked += 1


def test_bohr_sommerfeld_rejects_bad_lattices():
    with pytest.raises(DegenerateDivisorError):
        torus.bohr_sommerfeld_count([[1, 2], [2, 4]])
    with pytest.raises(StructuralError):
        torus.bohr_sommerfeld_count([[1, 2]])


def test_matrix_must_be_symmetric():
    with pytest.raises(StructuralError):
        TorusQuadraticDivisor(((1, 2), (0, 1)), ())
