import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_symmetric
from nodeshift.exact import brute_force_optimum
from nodeshift.heuristics import best_nn_tour, nearest_neighbour
from nodeshift.tours import tour_cost, validate_tour
from oracles import closed_cost, greedy_nn


def line_matrix(xs):
    xs = np.asarray(xs)
    return np.abs(xs[:, None] - xs[None, :]).astype(np.int64)


def test_points_on_a_line():
    m = line_matrix([0, 1, 2, 10])
    tour = nearest_neighbour(m, 0)
    assert tour.tolist() == [0, 1, 2, 3]
    assert tour_cost(m, tour) == 20


def test_ties_go_to_smallest_city():
    m = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=np.int64)
    assert nearest_neighbour(m, 2).tolist() == [2, 0, 1]


def test_berlin52_best_nn(berlin52):
    tour = best_nn_tour(berlin52)
    cost = tour_cost(berlin52, tour)
    assert cost == 8181
    assert 7542 < cost <= 1.25 * 7542


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.integers(0, 2**32 - 1))
def test_against_oracles(n, seed):
    m = random_symmetric(np.random.default_rng(seed), n)
    for start in range(n):
        tour = nearest_neighbour(m, start)
        assert validate_tour(tour, n) is None
        assert tour.tolist() == greedy_nn(m, start)
    best = best_nn_tour(m)
    assert tour_cost(m, best) == min(closed_cost(m, greedy_nn(m, s)) for s in range(n))
    assert tour_cost(m, best) >= brute_force_optimum(m)[1]
