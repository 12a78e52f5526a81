"""Time the compiled and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py --n 51 --population 100 --repeat 20

Prints the best-of-``repeat`` time per kernel and backend, then the time of
one full GA run with each backend.
"""

import argparse
import timeit

import numpy as np

from nodeshift import kernels
from nodeshift.encodings import make_adapter
from nodeshift.ga import GaConfig, evolve
from nodeshift.tsplib import build_cost_matrix, load_instance

KERNELS = ("tour_costs", "nse_decode_many", "dc_decode_many", "order_crossover",
           "swap_mutation")


def inputs(n: int, size: int, rng: np.random.Generator) -> dict[str, tuple]:
    perms = rng.permuted(np.tile(np.arange(n, dtype=np.int64), (size, 1)), axis=1)
    other = rng.permuted(perms, axis=1)
    matrix = rng.integers(0, 1000, size=(n, n)).astype(np.int64)
    ref = rng.permutation(n).astype(np.int64)
    return {
        "tour_costs": (perms, matrix),
        "nse_decode_many": (ref, rng.integers(0, n - 1, size=(size, n - 1))),
        "dc_decode_many": (ref, rng.integers(0, n, size=(size, n - n % 2))),
        "order_crossover": (perms, other, rng.integers(1, n, size=size)),
        "swap_mutation": (perms, rng.random((size, n)) < 0.03,
                          rng.integers(0, n, size=(size, n))),
    }


def best_of(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def ga_seconds(module, instance: str, iterations: int) -> float:
    matrix = build_cost_matrix(load_instance(instance))
    saved = {k: getattr(kernels, k) for k in KERNELS}
    try:
        for k in KERNELS:
            setattr(kernels, k, getattr(module, k))
        cfg = GaConfig(iterations=iterations)
        return best_of(lambda: evolve(matrix, make_adapter("nse", matrix.shape[0]), cfg),
                       (), 1)
    finally:
        for k, fn in saved.items():
            setattr(kernels, k, fn)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=51)
    parser.add_argument("--population", type=int, default=100)
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--instance", default="eil51")
    parser.add_argument("--iterations", type=int, default=200)
    args = parser.parse_args()

    backends = kernels.available_backends()
    data = inputs(args.n, args.population, np.random.default_rng(0))
    names = sorted(backends)
    print(f"n={args.n} population={args.population}, best of {args.repeat} (ms)")
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in names))
    for k in KERNELS:
        times = [best_of(getattr(backends[b], k), data[k], args.repeat) * 1e3 for b in names]
        print(f"{k:<18}" + "".join(f"{t:>12.3f}" for t in times))
    times = [ga_seconds(backends[b], args.instance, args.iterations) for b in names]
    print(f"{'NSE GA run (s)':<18}" + "".join(f"{t:>12.2f}" for t in times))


if __name__ == "__main__":
    main()
