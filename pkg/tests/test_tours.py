import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_symmetric
from nodeshift.tours import (TourError, canonical_tour, format_tour, parse_tour,
                             tour_cost, validate_tour)


def test_triangle_cost(triangle):
    assert tour_cost(triangle, [0, 1, 2]) == 12


def test_berlin52_optimal_tour(berlin52, berlin52_opt):
    assert tour_cost(berlin52, berlin52_opt) == 7542


def test_reversal_preserves_cost():
    rng = np.random.default_rng(6)
    m = random_symmetric(rng, 6)
    t = rng.permutation(6)
    assert tour_cost(m, t) == tour_cost(m, t[::-1])


def test_validate_ok():
    assert validate_tour([0, 3, 2, 4, 1], 5) is None


def test_validate_reports_one_based_cities():
    assert validate_tour([0, 1, 1, 3], 4) == "city 2 duplicated, city 3 missing"


def test_validate_length_and_range():
    assert "expected 3 cities" in validate_tour([0, 1], 3)
    assert "city 4 outside 1..3" in validate_tour([0, 1, 3], 3)


def test_tour_cost_rejects_invalid(triangle):
    with pytest.raises(TourError, match="duplicated"):
        tour_cost(triangle, [0, 0, 1])


def test_canonical():
    np.testing.assert_array_equal(canonical_tour(5), [0, 1, 2, 3, 4])
    np.testing.assert_array_equal(canonical_tour(3), [0, 1, 2])
    with pytest.raises(ValueError):
        canonical_tour(2)


def test_canonical_always_valid():
    for n in range(3, 201):
        assert validate_tour(canonical_tour(n), n) is None


def test_format_and_parse():
    assert format_tour([0, 3, 2, 4, 1]) == "1-4-3-5-2"
    np.testing.assert_array_equal(parse_tour("1,4,3,5,2"), [0, 3, 2, 4, 1])


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 12), st.integers(0, 2**32 - 1), st.integers(0, 11))
def test_rotation_and_reversal_invariance(n, seed, shift):
    rng = np.random.default_rng(seed)
    m = random_symmetric(rng, n)
    t = rng.permutation(n)
    cost = tour_cost(m, t)
    assert cost >= 0
    assert tour_cost(m, np.roll(t, shift)) == cost
    assert tour_cost(m, t[::-1]) == cost


def test_zero_cost_only_on_zero_edges():
    m = np.zeros((4, 4), dtype=np.int64)
    assert tour_cost(m, [0, 1, 2, 3]) == 0
    m[1, 2] = m[2, 1] = 1
    assert tour_cost(m, [0, 1, 2, 3]) == 1
