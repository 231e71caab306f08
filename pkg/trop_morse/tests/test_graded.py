import random

import pytest

from trop_morse.geometry.graded import (
    ZERO,
    GradedModule,
    direct_sum,
    euler,
    free,
    series_product,
    shift,
    sym_euler,
    sym_series,
    tensor,
)


def _random_module(rng):
    return GradedModule({rng.randint(-3, 3): rng.randint(0, 4) for _ in range(rng.randint(0, 4))})


def test_free_and_zero():
    assert free(0, 1).betti == {0: 1}
    assert free(1, 2).rank(1) == 2
    assert free(5, 0) == ZERO
    assert ZERO.is_zero


def test_negative_rank_rejected():
    with pytest.raises(ValueError):
        free(0, -1)
    with pytest.raises(ValueError):
        GradedModule({2: -3})


def test_zero_ranks_are_not_stored():
    assert GradedModule({0: 0, 1: 2}).degrees == [1]


def test_euler():
    assert euler(free(0, 1)) == 1
    assert euler(free(1, 1)) == -1
    assert euler(free(4, 1)) == 1
    assert euler(ZERO) == 0
    assert euler(free(0, 1) + free(1, 2)) == -1


def test_direct_sum_and_tensor_units():
    a = GradedModule({0: 2, 3: 1})
    assert direct_sum(a, ZERO) == a
    assert tensor(free(0, 1), a) == a
    assert tensor(free(1, 1), free(1, 1)) == free(2, 1)
    assert tensor(a, ZERO) == ZERO


def test_euler_is_additive_and_multiplicative():
    rng = random.Random(11)
    for _ in range(200):
        a, b = _random_module(rng), _random_module(rng)
        assert euler(a + b) == euler(a) + euler(b)
        assert euler(a * b) == euler(a) * euler(b)


def test_tensor_is_commutative_and_associative():
    rng = random.Random(3)
    for _ in range(50):
        a, b, c = (_random_module(rng) for _ in range(3))
        assert tensor(a, b) == tensor(b, a)
        assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


def test_shift_and_poincare_coefficients():
    m = GradedModule({0: 1, 2: 3})
    assert shift(m, 1) == GradedModule({1: 1, 3: 3})
    assert euler(shift(m, 1)) == -euler(m)
    assert m.poincare_coefficients() == [1, 0, 3]
    assert ZERO.poincare_coefficients() == []


def test_pairs_encoding():
    m = GradedModule({2: 1, -1: 4})
    assert m.to_pairs() == [[-1, 4], [2, 1]]
    assert GradedModule.from_pairs([(0, 1), (0, 2)]) == free(0, 3)


@pytest.mark.parametrize(
    "chi, n, expected",
    [(2, 3, 4), (1, 7, 1), (-1, 2, 0), (-1, 1, -1), (0, 0, 1), (0, 4, 0), (3, 2, 6)],
)
def test_sym_euler_values(chi, n, expected):
    assert sym_euler(chi, n) == expected


def test_sym_euler_matches_series_oracle():
    for chi in range(-8, 9):
        series = sym_series(chi, 12)
        for n in range(13):
            assert sym_euler(chi, n) == series[n], (chi, n)


def test_series_product_adds_exponents():
    assert series_product(sym_series(2, 6), sym_series(-3, 6)) == sym_series(-1, 6)


def test_sym_rejects_negative_n():
    with pytest.raises(ValueError):
        sym_euler(2, -1)
