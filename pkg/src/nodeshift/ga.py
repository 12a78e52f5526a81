"""Elitist generational GA, generic over the encoding adapter.

Each generation keeps the ``elitism_count`` cheapest genotypes unchanged and
fills the rest with children: tournament-selected parents, one-point
crossover, per-gene mutation. Fitness is the raw tour cost (minimized).

All random draws happen here, batched per generation, so a run is fully
determined by ``rng_seed`` whichever kernel backend does the decoding.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from nodeshift import kernels
from nodeshift.encodings import (Encoding, EncodingAdapter, random_population,
                                 seed_genotype)
from nodeshift.heuristics import best_nn_tour

__all__ = [
    "GaConfig",
    "RunRecord",
    "Seeding",
    "evolve",
    "mutate",
    "one_point_crossover",
    "tournament_select",
]


class Seeding(str, enum.Enum):
    RAND = "RAND"
    NN = "NN"


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    iterations: int = 500
    mutation_chance: float = 0.03
    elitism_count: int = 1
    tournament_size: int = 2
    seeding: Seeding = Seeding.RAND
    rng_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "seeding", Seeding(self.seeding.upper()))
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if not 0.0 <= self.mutation_chance <= 1.0:
            raise ValueError("mutation_chance must lie in [0, 1]")
        if not 1 <= self.elitism_count < self.population_size:
            raise ValueError("elitism_count must be in [1, population_size)")
        if not 1 <= self.tournament_size <= self.population_size:
            raise ValueError("tournament_size must be in [1, population_size]")


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one :func:`evolve` call.

    ``best_cost_per_generation[0]`` belongs to the initial population, so the
    sequence has ``iterations + 1`` entries. Tours are 0-based tuples.
    Equality ignores the wall-clock time.
    """

    encoding: Encoding
    config: GaConfig
    reference_tour: tuple[int, ...]
    best_cost_per_generation: tuple[int, ...]
    final_best_tour: tuple[int, ...]
    final_best_cost: int
    nn_cost: int | None = None
    wall_clock_ms: int = field(default=0, compare=False)


def tournament_select(fitnesses, tournament_size: int, rng: np.random.Generator,
                      count: int | None = None):
    """Index of the cheapest of ``tournament_size`` uniform draws.

    Draws are with replacement; ties go to the lowest index. With ``count``
    an array of that many independent winners is returned instead.
    """
    costs = np.asarray(fitnesses)
    size = costs.shape[0]
    draws = rng.integers(0, size, size=(1 if count is None else count, tournament_size))
    drawn = costs[draws]
    best = drawn.min(axis=1, keepdims=True)
    winners = np.where(drawn == best, draws, size).min(axis=1)
    return int(winners[0]) if count is None else winners


def _crossover_many(kind: Encoding, a: np.ndarray, b: np.ndarray,
                    cuts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if kind is Encoding.PR:
        return kernels.order_crossover(a, b, cuts)
    head = np.arange(a.shape[1])[None, :] < cuts[:, None]
    return np.where(head, a, b), np.where(head, b, a)


def one_point_crossover(a, b, cut: int,
                        encoding: Encoding | str) -> tuple[np.ndarray, np.ndarray]:
    """Children of ``a`` and ``b`` cut before position ``cut``.

    Vector encodings splice prefix and suffix. For PR the second part is
    the missing cities in the order the other parent visits them.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or not 1 <= cut < a.shape[0]:
        raise ValueError(f"need equal-length parents and 1 <= cut < {a.shape[0]}")
    first, second = _crossover_many(Encoding(encoding), a[None], b[None],
                                    np.array([cut], dtype=np.int64))
    return first[0], second[0]


def _mutate_many(pop: np.ndarray, chance: float, rng: np.random.Generator,
                 adapter: EncodingAdapter) -> np.ndarray:
    hit = rng.random(pop.shape) < chance
    if adapter.kind is Encoding.PR:
        n = pop.shape[1]
        partners = rng.integers(0, n - 1, size=pop.shape, dtype=np.int64)
        partners += partners >= np.arange(n)  # uniform over the other positions
        return kernels.swap_mutation(pop, hit, partners)
    fresh = rng.integers(adapter.low, adapter.high, size=pop.shape, endpoint=True,
                         dtype=np.int64)
    return np.where(hit, fresh, pop)


def mutate(genotype, mutation_chance: float, rng: np.random.Generator,
           adapter: EncodingAdapter) -> np.ndarray:
    """Per-gene mutation: a fresh in-bounds value for NSE/DC, a swap for PR."""
    g = np.asarray(genotype, dtype=np.int64)
    return _mutate_many(g[None], mutation_chance, rng, adapter)[0]


def _costs(adapter: EncodingAdapter, pop: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return kernels.tour_costs(adapter.decode_many(pop), matrix)


def _check_population(adapter: EncodingAdapter, pop: np.ndarray, generation: int) -> None:
    for r, g in enumerate(pop):
        problem = adapter.check_genotype(g)
        if problem:
            raise AssertionError(f"generation {generation}, individual {r}: {problem}")


def evolve(matrix: np.ndarray, adapter: EncodingAdapter, config: GaConfig,
           nn_tour=None, check_invariants: bool = False) -> RunRecord:
    """Run the GA for ``config.iterations`` generations.

    With NN seeding the adapter is re-anchored on the best nearest-neighbour
    tour (pass ``nn_tour`` to skip recomputing it) and one individual
    decoding to that tour joins an otherwise random population.
    ``check_invariants`` validates every genotype of every generation.
    """
    started = time.perf_counter()
    matrix = np.ascontiguousarray(matrix, dtype=np.int64)
    if matrix.shape != (adapter.n, adapter.n):
        raise ValueError(f"adapter is for {adapter.n} cities, matrix is {matrix.shape}")
    rng = np.random.default_rng(config.rng_seed)
    size, elite = config.population_size, config.elitism_count

    nn_cost = None
    if config.seeding is Seeding.NN:
        if nn_tour is None:
            nn_tour = best_nn_tour(matrix)
        adapter, seed = seed_genotype(adapter, nn_tour)
        nn_cost = int(kernels.tour_costs(np.asarray(nn_tour)[None], matrix)[0])
        pop = np.vstack([seed[None], random_population(adapter, rng, size - 1)])
    else:
        pop = random_population(adapter, rng, size)

    costs = _costs(adapter, pop, matrix)
    history = [int(costs.min())]
    n_children = size - elite
    n_pairs = (n_children + 1) // 2
    length = adapter.genome_length

    for generation in range(1, config.iterations + 1):
        if check_invariants:
            _check_population(adapter, pop, generation - 1)
        ranked = np.lexsort((np.arange(size), costs))[:elite]
        parents = tournament_select(costs, config.tournament_size, rng, 2 * n_pairs)
        cuts = rng.integers(1, length, size=n_pairs, dtype=np.int64)
        first, second = _crossover_many(adapter.kind, pop[parents[0::2]],
                                        pop[parents[1::2]], cuts)
        children = np.empty((2 * n_pairs, length), dtype=np.int64)
        children[0::2], children[1::2] = first, second
        children = _mutate_many(children[:n_children], config.mutation_chance, rng, adapter)

        pop = np.vstack([pop[ranked], children])
        costs = np.concatenate([costs[ranked], _costs(adapter, children, matrix)])
        history.append(int(costs.min()))

    if check_invariants:
        _check_population(adapter, pop, config.iterations)
    best = int(np.argmin(costs))
    tour = adapter.decode(pop[best])
    return RunRecord(
        encoding=adapter.kind,
        config=config,
        reference_tour=tuple(int(c) for c in adapter.reference),
        best_cost_per_generation=tuple(history),
        final_best_tour=tuple(int(c) for c in tour),
        final_best_cost=int(costs[best]),
        nn_cost=nn_cost,
        wall_clock_ms=round((time.perf_counter() - started) * 1000),
    )
