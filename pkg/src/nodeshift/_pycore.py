"""Pure-numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_core`` extension. Loops run
over genes or positions, with every step vectorized across the population.
No function here draws random numbers.
"""

from __future__ import annotations

import numpy as np


def _check_bounds(genes: np.ndarray, low: int, high: int, what: str) -> None:
    if genes.size and (genes.min() < low or genes.max() > high):
        bad = genes[(genes < low) | (genes > high)][0]
        raise ValueError(f"{what} {bad} outside [{low}, {high}]")


def tour_costs(tours: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    tours = np.asarray(tours, dtype=np.int64)
    return matrix[tours, np.roll(tours, -1, axis=1)].sum(axis=1).astype(np.int64)


def nse_decode_many(ref: np.ndarray, chromos: np.ndarray) -> np.ndarray:
    """Node-shift decoding of every row of ``chromos`` against ``ref``.

    ``ranks[:, i]`` is the current position of the city at reference
    position ``i``. Position 0 never moves.
    """
    ref = np.asarray(ref, dtype=np.int64)
    chromos = np.asarray(chromos, dtype=np.int64)
    n = ref.shape[0]
    pop = chromos.shape[0]
    if chromos.shape[1] != n - 1:
        raise ValueError(f"chromosome length {chromos.shape[1]} != {n - 1}")
    _check_bounds(chromos, 0, n - 2, "shift")

    ranks = np.tile(np.arange(n, dtype=np.int64), (pop, 1))
    for i in range(1, n):
        old = ranks[:, i].copy()
        new = old + chromos[:, i - 1]
        wrapped = new > n - 1
        new[wrapped] -= n - 1
        forward = (new > old)[:, None]
        lo, hi = old[:, None], new[:, None]
        ranks -= forward & (ranks >= lo) & (ranks <= hi)
        ranks += ~forward & (ranks >= hi) & (ranks < lo)
        ranks[:, i] = new

    tours = np.empty_like(ranks)
    np.put_along_axis(tours, ranks, np.broadcast_to(ref, ranks.shape), axis=1)
    return tours


def dc_decode_many(map_tour: np.ndarray, guides: np.ndarray) -> np.ndarray:
    """Apply each guide's consecutive position swaps to a copy of the map."""
    map_tour = np.asarray(map_tour, dtype=np.int64)
    guides = np.asarray(guides, dtype=np.int64)
    n = map_tour.shape[0]
    if guides.shape[1] % 2:
        raise ValueError(f"guide length {guides.shape[1]} is odd")
    _check_bounds(guides, 0, n - 1, "guide position")

    tours = np.tile(map_tour, (guides.shape[0], 1))
    rows = np.arange(guides.shape[0])
    for k in range(0, guides.shape[1], 2):
        p, q = guides[:, k], guides[:, k + 1]
        held = tours[rows, p].copy()
        tours[rows, p] = tours[rows, q]
        tours[rows, q] = held
    return tours


def order_crossover(a: np.ndarray, b: np.ndarray,
                    cuts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One-point crossover for permutations, pairwise over rows.

    Child 1 keeps ``a[:cut]`` and appends the missing cities in the order
    they appear in ``b``; child 2 is the mirror image.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    first = np.empty_like(a)
    second = np.empty_like(b)
    for r, cut in enumerate(np.asarray(cuts, dtype=np.int64)):
        first[r] = _splice(a[r], b[r], int(cut))
        second[r] = _splice(b[r], a[r], int(cut))
    return first, second


def _splice(head: np.ndarray, donor: np.ndarray, cut: int) -> np.ndarray:
    taken = np.zeros(head.shape[0], dtype=bool)
    taken[head[:cut]] = True
    return np.concatenate((head[:cut], donor[~taken[donor]]))


def swap_mutation(tours: np.ndarray, mask: np.ndarray,
                  partners: np.ndarray) -> np.ndarray:
    """Swap position ``j`` with ``partners[r, j]`` wherever ``mask[r, j]``.

    Swaps are applied left to right, so later swaps see earlier ones.
    """
    out = np.array(tours, dtype=np.int64)
    mask = np.asarray(mask, dtype=bool)
    partners = np.asarray(partners, dtype=np.int64)
    for j in range(out.shape[1]):
        rows = np.flatnonzero(mask[:, j])
        if rows.size == 0:
            continue
        q = partners[rows, j]
        held = out[rows, j].copy()
        out[rows, j] = out[rows, q]
        out[rows, q] = held
    return out
