"""Exact reference results for small instances, and MTZ model export.

:func:`brute_force_optimum` enumerates every tour up to 12 cities.
:func:`export_mtz` writes the Miller-Tucker-Zemlin integer program in CPLEX
LP format for an external MIP solver; nothing here solves it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MAX_BRUTE_FORCE_N",
    "MtzModel",
    "SubtourError",
    "arcs_from_solution",
    "brute_force_optimum",
    "build_mtz_model",
    "export_mtz",
    "tour_from_arc_solution",
]

MAX_BRUTE_FORCE_N = 12
_CHUNK = 200_000


def brute_force_optimum(matrix: np.ndarray) -> tuple[np.ndarray, int]:
    """Cheapest tour by exhaustive enumeration.

    City 0 is fixed first and only orders whose second city is smaller than
    their last are scored, since the matrix is symmetric. Orders come in
    lexicographic sequence and only strict improvements are kept, so the
    lexicographically smallest optimal tour is returned.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    n = matrix.shape[0]
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"brute force is limited to {MAX_BRUTE_FORCE_N} cities, got {n}")
    if n < 3:
        raise ValueError("need at least 3 cities")
    if not np.array_equal(matrix, matrix.T):
        raise ValueError("brute force assumes a symmetric matrix")

    orders = itertools.permutations(range(1, n))
    best_tour, best_cost = None, None
    while True:
        chunk = np.array(list(itertools.islice(orders, _CHUNK)), dtype=np.int64)
        if chunk.size == 0:
            break
        chunk = chunk[chunk[:, 0] < chunk[:, -1]]
        if chunk.size == 0:
            continue
        tours = np.hstack([np.zeros((len(chunk), 1), dtype=np.int64), chunk])
        costs = matrix[tours, np.roll(tours, -1, axis=1)].sum(axis=1)
        k = int(np.argmin(costs))
        if best_cost is None or costs[k] < best_cost:
            best_tour, best_cost = tours[k].copy(), int(costs[k])
    return best_tour, best_cost


@dataclass(frozen=True)
class MtzModel:
    """The MTZ program for ``n`` cities, with 1-based variable names.

    Arc variables ``x_i_j`` (i != j) are binary; order variables ``u_i`` for
    ``i = 2..n`` are continuous in ``[1, n - 1]``. Each constraint is a
    ``(name, {variable: coefficient}, sense, rhs)`` tuple.
    """

    n: int
    objective: dict[str, int]
    constraints: tuple[tuple[str, dict[str, int], str, int], ...]
    binaries: tuple[str, ...]
    bounds: dict[str, tuple[int, int]]

    @property
    def degree_rows(self) -> list[str]:
        return [c[0] for c in self.constraints if c[0].startswith(("out_", "in_"))]

    @property
    def subtour_rows(self) -> list[str]:
        return [c[0] for c in self.constraints if c[0].startswith("mtz_")]


def _x(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def build_mtz_model(matrix: np.ndarray) -> MtzModel:
    n = matrix.shape[0]
    if n < 3:
        raise ValueError("need at least 3 cities")
    cities = range(1, n + 1)
    arcs = [(i, j) for i in cities for j in cities if i != j]
    objective = {_x(i, j): int(matrix[i - 1, j - 1]) for i, j in arcs}
    rows = []
    for i in cities:
        rows.append((f"out_{i}", {_x(i, j): 1 for j in cities if j != i}, "=", 1))
    for j in cities:
        rows.append((f"in_{j}", {_x(i, j): 1 for i in cities if i != j}, "=", 1))
    for i, j in arcs:
        if i >= 2 and j >= 2:
            rows.append((f"mtz_{i}_{j}", {f"u_{i}": 1, f"u_{j}": -1, _x(i, j): n},
                         "<=", n - 1))
    bounds = {f"u_{i}": (1, n - 1) for i in range(2, n + 1)}
    return MtzModel(n, objective, tuple(rows), tuple(_x(i, j) for i, j in arcs), bounds)


def _terms(coeffs: dict[str, int], per_line: int = 8) -> list[str]:
    parts = []
    for k, (name, c) in enumerate(coeffs.items()):
        sign = "-" if c < 0 else "+"
        text = f"{abs(c)} {name}"
        parts.append(text if k == 0 and c >= 0 else f"{sign} {text}")
    return [" ".join(parts[k:k + per_line]) for k in range(0, len(parts), per_line)]


def export_mtz(matrix: np.ndarray, name: str = "tsp") -> str:
    """LP-format text of the MTZ model for ``matrix``."""
    model = build_mtz_model(matrix)
    out = [f"\\ MTZ model for {name}, {model.n} cities", "Minimize"]
    lines = _terms(model.objective)
    out.append(f" obj: {lines[0]}")
    out += [f"   {line}" for line in lines[1:]]
    out.append("Subject To")
    for row_name, coeffs, sense, rhs in model.constraints:
        lines = _terms(coeffs)
        lines[-1] += f" {sense} {rhs}"
        out.append(f" {row_name}: {lines[0]}")
        out += [f"   {line}" for line in lines[1:]]
    out.append("Bounds")
    out += [f" {lo} <= {var} <= {hi}" for var, (lo, hi) in model.bounds.items()]
    out.append("Binary")
    out += [f" {' '.join(model.binaries[k:k + 10])}"
            for k in range(0, len(model.binaries), 10)]
    out.append("End")
    return "\n".join(out) + "\n"


class SubtourError(ValueError):
    """Arc values that split into more than one cycle."""

    def __init__(self, cycle: tuple[int, ...]):
        self.cycle = cycle
        names = ",".join(str(c + 1) for c in cycle)
        super().__init__(f"arcs form a subtour ({names})")


_ARC_NAME = re.compile(r"^x_(\d+)_(\d+)$")


def arcs_from_solution(values: dict[str, float]) -> dict[tuple[int, int], int]:
    """Map solver output ``{"x_1_2": 1.0, ...}`` to 0-based arcs."""
    arcs = {}
    for name, value in values.items():
        match = _ARC_NAME.match(name)
        if match:
            arcs[int(match.group(1)) - 1, int(match.group(2)) - 1] = int(round(value))
    return arcs


def tour_from_arc_solution(x: dict[tuple[int, int], int], n: int) -> np.ndarray:
    """Follow the chosen arcs from city 0; raises :class:`SubtourError`."""
    succ = {}
    for (i, j), v in x.items():
        if v:
            if i in succ:
                raise ValueError(f"city {i + 1} has more than one outgoing arc")
            succ[i] = j
    if sorted(succ) != list(range(n)) or sorted(succ.values()) != list(range(n)):
        raise ValueError("arc values do not satisfy the degree constraints")
    tour = [0]
    while succ[tour[-1]] != 0:
        tour.append(succ[tour[-1]])
    if len(tour) < n:
        raise SubtourError(tuple(tour))
    return np.array(tour, dtype=np.int64)
