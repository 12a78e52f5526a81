"""Reference implementations that share no code with the package."""

import itertools


def single_step_shift(ref, shifts):
    """Node-shift decoding by literal one-place moves.

    Each move swaps the city with its right neighbour; from the last slot it
    jumps to the slot right after the fixed first city. ``shifts`` may hold
    any non-negative counts, not only in-range ones.
    """
    seq = list(ref)
    for i, count in enumerate(shifts, start=1):
        city = ref[i]
        for _ in range(count):
            p = seq.index(city)
            if p == len(seq) - 1:
                seq.pop()
                seq.insert(1, city)
            else:
                seq[p], seq[p + 1] = seq[p + 1], seq[p]
    return seq


def swap_pairs(map_tour, guide):
    seq = list(map_tour)
    for p, q in zip(guide[0::2], guide[1::2]):
        seq[p], seq[q] = seq[q], seq[p]
    return seq


def closed_cost(matrix, order):
    return sum(int(matrix[order[k]][order[(k + 1) % len(order)]]) for k in range(len(order)))


def all_tours_min_cost(matrix):
    """Minimum over every permutation, no symmetry tricks."""
    n = len(matrix)
    return min(closed_cost(matrix, (0,) + p) for p in itertools.permutations(range(1, n)))


def greedy_nn(matrix, start):
    n = len(matrix)
    tour, left = [start], set(range(n)) - {start}
    while left:
        here = tour[-1]
        nxt = min(left, key=lambda c: (matrix[here][c], c))
        tour.append(nxt)
        left.remove(nxt)
    return tour
