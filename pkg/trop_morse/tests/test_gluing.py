from fractions import Fraction

import pytest

from trop_morse.core.exceptions import PermissibilityError
from trop_morse.geometry import curve as curves
from trop_morse.geometry.curve import CurveDivisor, Edge, Profile, TropicalCurve, Vertex
from trop_morse.geometry.gluing import random_split, split_verify
from trop_morse.geometry.random_curves import random_curve, random_divisor
from trop_morse.services import fixtures


def test_cut_elliptic_at_its_vertex():
    curve, div = fixtures.elliptic(4)
    result = split_verify(curve, div, ["v:o"])
    assert len(result.parts) == 1
    assert result.correction == 1
    assert result.euler_whole == 4
    assert result.euler_parts == [5]
    assert result.rotation_parts == [4]
    assert result.chi_top_parts == [1]
    assert result.identity_ok


def test_cut_elliptic_at_an_edge_point():
    curve, div = fixtures.elliptic(3)
    result = split_verify(curve, div, ["e:e@1/3"])
    assert result.euler_parts == [4]
    assert result.identity_ok


def test_cut_star_into_spokes():
    curve, div = fixtures.star(2, 2)
    result = split_verify(curve, div, ["v:o"])
    assert len(result.parts) == 4
    assert result.correction == 3
    assert sum(result.euler_parts) - result.correction == result.euler_whole == 1 - 2 + 2
    assert result.identity_ok


def _theta():
    curve = TropicalCurve(
        (Vertex("a"), Vertex("b")),
        tuple(Edge(f"e{i}", "a", "b", Fraction(1)) for i in range(3)),
    )
    div = CurveDivisor({
        "e0": Profile.linear(Fraction(1), Fraction(0), Fraction(1)),
        "e1": Profile.linear(Fraction(1), Fraction(0), Fraction(1)),
        "e2": Profile.linear(Fraction(1), Fraction(0), Fraction(-2)),
    })
    return curve, div


def test_cut_theta_graph_at_both_vertices():
    curve, div = _theta()
    assert curves.verify_rr(curve, div).ok
    result = split_verify(curve, div, ["v:a", "v:b"])
    assert len(result.parts) == 3
    assert result.correction == 4
    assert result.chi_top_whole == -1
    assert result.chi_top_parts == [1, 1, 1]
    assert sorted(result.euler_parts) == [-1, 2, 2]
    assert sorted(result.rotation_parts) == [-2, 1, 1]
    assert result.identity_ok
    for part_curve, part_div in result.parts:
        assert curves.verify_rr(part_curve, part_div).ok


def test_empty_cut_is_trivial():
    curve, div = fixtures.tp1(3)
    result = split_verify(curve, div, [])
    assert result.euler_parts == [result.euler_whole]
    assert result.correction == 0


def test_cut_must_be_an_intersection_point():
    curve, div = fixtures.elliptic(2)
    with pytest.raises(PermissibilityError):
        split_verify(curve, div, ["e:e@1/3"])


def test_random_splits_satisfy_gluing():
    for index in range(50):
        curve = random_curve(index % 4, index % 3, seed=500 + index)
        div = random_divisor(curve, seed=900 + index)
        result = random_split(curve, div, seed=index)
        assert result.identity_ok, (index, result.labels)
        for part_curve, part_div in result.parts:
            assert curves.verify_rr(part_curve, part_div).ok
