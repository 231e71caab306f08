from fractions import Fraction

import numpy as np
import pytest

from trop_morse.core.exceptions import NotFullDimensionalError, PermissibilityError
from trop_morse.geometry import curve as curves
from trop_morse.geometry import toric
from trop_morse.geometry.graded import ZERO, free
from trop_morse.geometry.toric import Facet, LatticePolytope
from trop_morse.schemas.toric import PolytopeSchema
from trop_morse.services.toric_service import ToricService, numeric_gradient

# conv{(0,0), (2,0), (0,1)}: the edge directions at (0,1) span an index-2 sublattice
NON_DELZANT = LatticePolytope(
    2,
    ((0, 0), (2, 0), (0, 1)),
    (Facet((0, -1), 0), Facet((-1, 0), 0), Facet((1, 2), 2)),
)

FLAT_SEGMENT = LatticePolytope(
    2,
    ((0, 0), (1, 0)),
    (Facet((0, 1), 0), Facet((0, -1), 0), Facet((1, 0), 1), Facet((-1, 0), 0)),
)


@pytest.mark.parametrize(
    "polytope, coefficients",
    [
        (toric.cube(1), (1, 1)),
        (toric.cube(2), (1, 2, 1)),
        (toric.cube(3), (1, 3, 3, 1)),
        (toric.standard_simplex(2), (1, Fraction(3, 2), Fraction(1, 2))),
        (toric.standard_simplex(3), (1, Fraction(11, 6), 1, Fraction(1, 6))),
        (toric.segment(0, 5), (1, 5)),
        (toric.dilate(toric.standard_simplex(2), 2), (1, 3, 2)),
    ],
)
def test_ehrhart_polynomials(polytope, coefficients):
    assert toric.ehrhart(polytope).coefficients == tuple(Fraction(c) for c in coefficients)


@pytest.mark.parametrize(
    "polytope",
    [toric.cube(n) for n in (1, 2, 3)]
    + [toric.standard_simplex(n) for n in (1, 2, 3)]
    + [toric.segment(0, 5), toric.dilate(toric.standard_simplex(2), 2)],
)
def test_ehrhart_reciprocity(polytope):
    checks = toric.verify_reciprocity(polytope, kmax=4)
    assert [c.k for c in checks] == [1, 2, 3, 4]
    assert all(c.ok for c in checks)
    report = ToricService.ehrhart(polytope, kmax=3)
    assert report.direct_ok and report.reciprocity_ok and report.ok
    assert len(report.direct_counts) == 2 * polytope.n + 1


def test_interior_counts():
    assert len(toric.interior_lattice_points(toric.cube(3), 3)) == 8
    assert toric.interior_lattice_points(toric.standard_simplex(2), 3) == [(1, 1)]
    assert toric.boundary_lattice_points(toric.segment(0, 5)) == [(0,), (5,)]


def test_toric_lmd_segment():
    polytope = toric.segment(0, 5)
    assert toric.toric_lmd(polytope, 1).lmd == free(0, 6)
    minus = toric.toric_lmd(polytope, -1)
    assert minus.lmd == free(1, 4)
    assert minus.euler == -4


def test_toric_lmd_signs():
    assert toric.toric_lmd(toric.cube(2), -1).lmd == ZERO
    three_simplex = toric.dilate(toric.standard_simplex(2), 3)
    assert toric.toric_lmd(three_simplex, 1).euler == 10
    assert toric.toric_lmd(three_simplex, -1).lmd == free(2, 1)
    with pytest.raises(ValueError):
        toric.toric_lmd(toric.cube(1), 0)


def test_segment_divisor_matches_toric_lmd():
    for b in (1, 3, 6):
        polytope = toric.segment(0, b)
        curve, div = toric.segment_divisor(polytope)
        assert curves.lmd(curve, div) == toric.toric_lmd(polytope, 1).lmd
        assert curves.verify_rr(curve, div).ok


def test_delzant():
    assert toric.delzant_check(toric.cube(3))
    assert toric.delzant_check(toric.standard_simplex(2))
    assert toric.delzant_check(toric.dilate(toric.standard_simplex(2), 2))
    assert toric.delzant_check(toric.segment(0, 5))
    assert not toric.delzant_check(NON_DELZANT)


def test_lower_dimensional_polytope():
    assert not toric.is_full_dimensional(FLAT_SEGMENT)
    assert toric.lattice_points(FLAT_SEGMENT) == [(0, 0), (1, 0)]
    with pytest.raises(NotFullDimensionalError):
        toric.interior_lattice_points(FLAT_SEGMENT)
    with pytest.raises(NotFullDimensionalError):
        toric.delzant_check(FLAT_SEGMENT)


def test_cross_validation():
    assert toric.cross_validate(toric.cube(2)) == []
    assert toric.cross_validate(NON_DELZANT) == []
    square_with_triangle_facets = LatticePolytope(
        2,
        ((0, 0), (1, 0), (0, 1), (1, 1)),
        toric.standard_simplex(2).facets,
    )
    assert toric.cross_validate(square_with_triangle_facets)
    schema = PolytopeSchema.from_domain(square_with_triangle_facets)
    with pytest.raises(PermissibilityError):
        schema.to_domain()


DIAGONAL_VERTICES = ((0, 0), (2, 2))
SQUARE_FACETS = (Facet((1, 0), 2), Facet((-1, 0), 0), Facet((0, 1), 2), Facet((0, -1), 0))
DIAGONAL_FACETS = (Facet((1, -1), 0), Facet((-1, 1), 0), Facet((1, 0), 2), Facet((-1, 0), 0))


def test_cross_validation_of_lower_dimensional_polytopes():
    assert toric.cross_validate(FLAT_SEGMENT) == []
    diagonal = LatticePolytope(2, DIAGONAL_VERTICES, DIAGONAL_FACETS)
    assert toric.cross_validate(diagonal) == []
    assert toric.lattice_points(diagonal) == [(0, 0), (1, 1), (2, 2)]

    square_facets = LatticePolytope(2, DIAGONAL_VERTICES, SQUARE_FACETS)
    problems = toric.cross_validate(square_facets)
    assert len(problems) == 6
    assert any("(1, 0)" in p for p in problems)
    with pytest.raises(PermissibilityError):
        PolytopeSchema.from_domain(square_facets).to_domain()


def test_cross_validation_rejects_unbounded_facets():
    ray = LatticePolytope(1, ((0,),), (Facet((-1,), 0),))
    assert not toric.is_full_dimensional(ray)
    [problem] = toric.cross_validate(ray)
    assert "do not bound a polytope" in problem


def test_moment_map_is_the_gradient():
    polytope = toric.dilate(toric.standard_simplex(2), 2)
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = rng.uniform(-3, 3, 2)
        np.testing.assert_allclose(numeric_gradient(polytope, x), toric.moment_map(polytope, x), atol=1e-6)


def test_moment_map_lands_inside():
    polytope = toric.cube(2)
    mu = toric.moment_map(polytope, [0.0, 0.0])
    np.testing.assert_allclose(mu, [0.5, 0.5])
    assert np.all(polytope.normals @ toric.moment_map(polytope, [4.0, -4.0]) < polytope.offsets)


def test_hessian_is_positive_definite():
    polytope = toric.cube(3)
    eigenvalues = np.linalg.eigvalsh(toric.hessian(polytope, [0.3, -1.0, 2.0]))
    assert eigenvalues.min() > 0


def test_potential_is_log_sum_exp():
    polytope = toric.segment(0, 2)
    x = 0.7
    assert toric.eval_f(polytope, [x]) == pytest.approx(np.log(1 + np.exp(x) + np.exp(2 * x)))


def test_toric_service_report():
    report = ToricService.lmd(toric.dilate(toric.standard_simplex(2), 3), seed=5)
    assert report.euler == {"plus": 10, "minus": 1}
    assert report.delzant
    assert report.moment.ok and report.moment.approximate
    assert report.ok
    assert len(report.points) == 10
