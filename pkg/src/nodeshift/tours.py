"""Tours in path representation and their costs.

A tour is a 1-D integer array holding a permutation of ``0..n-1`` in visit
order. The closing edge from the last city back to the first is implied.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

import numpy as np

__all__ = [
    "TourError",
    "as_tour",
    "canonical_tour",
    "format_tour",
    "parse_tour",
    "tour_cost",
    "validate_tour",
]


class TourError(ValueError):
    pass


def validate_tour(order: Sequence[int] | np.ndarray, n: int) -> str | None:
    """Return ``None`` if ``order`` is a permutation of ``0..n-1``.

    Otherwise return a description of the violation. Cities in the message
    are numbered from 1, as in instance files.
    """
    items = [int(c) for c in np.asarray(order).ravel()]
    problems = []
    if len(items) != n:
        problems.append(f"expected {n} cities, got {len(items)}")
    counts = Counter(items)
    outside = sorted(c for c in counts if not 0 <= c < n)
    dupes = sorted(c for c, k in counts.items() if k > 1 and 0 <= c < n)
    missing = [c for c in range(n) if c not in counts]
    problems += [f"city {c + 1} outside 1..{n}" for c in outside]
    problems += [f"city {c + 1} duplicated" for c in dupes]
    problems += [f"city {c + 1} missing" for c in missing]
    return ", ".join(problems) if problems else None


def as_tour(order: Sequence[int] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Validate ``order`` and return it as a fresh ``int64`` array."""
    tour = np.array(order, dtype=np.int64)
    problem = validate_tour(tour, len(tour) if n is None else n)
    if problem:
        raise TourError(problem)
    return tour


def canonical_tour(n: int) -> np.ndarray:
    """The identity tour ``0, 1, ..., n-1``."""
    if n < 3:
        raise ValueError(f"a tour needs at least 3 cities, got {n}")
    return np.arange(n, dtype=np.int64)


def tour_cost(matrix: np.ndarray, tour: Sequence[int] | np.ndarray) -> int:
    """Total cost of the closed tour, including the implied return edge."""
    tour = np.asarray(tour)
    problem = validate_tour(tour, matrix.shape[0])
    if problem:
        raise TourError(problem)
    return int(matrix[tour, np.roll(tour, -1)].sum())


def format_tour(tour: Sequence[int] | np.ndarray, sep: str = "-") -> str:
    """Render with 1-based city numbers, e.g. ``1-4-3-5-2``."""
    return sep.join(str(int(c) + 1) for c in tour)


def parse_tour(text: str, n: int | None = None) -> np.ndarray:
    """Inverse of :func:`format_tour`; accepts ``-``, ``,`` or whitespace."""
    tokens = text.replace(",", " ").replace("-", " ").split()
    return as_tour([int(t) - 1 for t in tokens], n)
