import pytest

from trop_morse.geometry import curve as curves
from trop_morse.geometry.random_curves import random_curve, random_divisor


def _instances(count):
    for index in range(count):
        genus, leaves = index % 5, index % 4
        curve = random_curve(genus, leaves, seed=index)
        yield genus, curve, random_divisor(curve, seed=10_000 + index)


def test_random_curve_shape():
    curve = random_curve(3, 2, seed=42)
    assert curve.genus == 3
    assert len(curve.components()) == 1
    assert sum(v.at_infinity for v in curve.vertices) == 2
    assert not curve.structural_errors()


def test_random_generation_is_deterministic():
    assert random_curve(2, 1, seed=9) == random_curve(2, 1, seed=9)
    curve = random_curve(2, 1, seed=9)
    assert random_divisor(curve, seed=4).profiles == random_divisor(curve, seed=4).profiles


def test_random_divisors_are_permissible():
    for _, curve, div in _instances(60):
        assert curves.validate(curve, div).ok


def test_riemann_roch_on_random_curves():
    for genus, curve, div in _instances(200):
        assert curve.genus == genus
        check = curves.verify_rr(curve, div)
        assert check.ok, (genus, check)
        assert curves.rotation_number(curve, div) == curves.degree(curve, div)


def test_principal_divisors_have_degree_zero():
    for index in range(30):
        curve = random_curve(index % 3, 0, seed=index)
        div = random_divisor(curve, seed=index, principal=True)
        assert curves.degree(curve, div) == 0
        assert curves.verify_rr(curve, div).ok


def test_adding_a_principal_divisor_keeps_rotation_and_degree():
    checked = 0
    for index in range(100):
        curve = random_curve(index % 4, index % 3, seed=index)
        div = random_divisor(curve, seed=20_000 + index)
        principal = random_divisor(curve, seed=30_000 + index, principal=True)
        moved = curves.add_profiles(div, principal)
        if not curves.validate(curve, moved).ok:
            continue
        checked += 1
        assert curves.degree(curve, moved) == curves.degree(curve, div)
        assert curves.rotation_number(curve, moved) == curves.rotation_number(curve, div)
    assert checked > 0


def test_random_divisors_cover_both_signs_and_both_kinds_of_value():
    values = set()
    for index in range(20):
        curve = random_curve(index % 3, index % 2, seed=index)
        div = random_divisor(curve, seed=index)
        values.update(v for profile in div.profiles.values() for v in profile.values)
    assert any(v > 0 for v in values)
    assert any(v < 0 for v in values)
    assert any(v.denominator == 1 for v in values)
    assert any(v.denominator > 1 for v in values)


def test_bad_arguments():
    with pytest.raises(ValueError):
        random_curve(-1, 0, seed=0)
    with pytest.raises(ValueError):
        random_curve(10, 5, seed=0, max_edges=12)
