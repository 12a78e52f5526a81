"""Nearest-neighbour tour construction, used to seed GA populations."""

from __future__ import annotations

import numpy as np

__all__ = ["best_nn_tour", "nearest_neighbour"]


def nearest_neighbour(matrix: np.ndarray, start: int) -> np.ndarray:
    """Greedy tour from ``start``; ties go to the smallest city index."""
    n = matrix.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"start city {start} outside 0..{n - 1}")
    big = np.iinfo(np.int64).max
    visited = np.zeros(n, dtype=bool)
    tour = np.empty(n, dtype=np.int64)
    city = start
    for k in range(n):
        tour[k] = city
        visited[city] = True
        if k < n - 1:
            # argmin returns the first minimum, i.e. the smallest index
            city = int(np.argmin(np.where(visited, big, matrix[city])))
    return tour


def best_nn_tour(matrix: np.ndarray) -> np.ndarray:
    """Cheapest nearest-neighbour tour over every start city."""
    best, best_cost = None, None
    for start in range(matrix.shape[0]):
        tour = nearest_neighbour(matrix, start)
        cost = int(matrix[tour, np.roll(tour, -1)].sum())
        if best_cost is None or cost < best_cost:
            best, best_cost = tour, cost
    return best
