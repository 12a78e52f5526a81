"""Acceptance suite: one test per criterion, reported as PASS/FAIL/SKIP lines.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python
tests/test_acceptance.py``). Criterion 9 takes a few minutes; criterion 10
needs the optional ``highspy`` solver and is skipped without it.
"""

import itertools
import time

import numpy as np
import pytest

from conftest import random_euclidean, random_symmetric, solve_lp_file
from nodeshift.bench import read_runs
from nodeshift.cli import main
from nodeshift.encodings import (Encoding, dc_decode, make_adapter, nse_decode, nse_reduce,
                                 nse_trace, random_population)
from nodeshift.exact import (arcs_from_solution, brute_force_optimum, build_mtz_model,
                             export_mtz, tour_from_arc_solution)
from nodeshift.ga import GaConfig, evolve
from nodeshift.heuristics import best_nn_tour
from nodeshift.tours import tour_cost
from oracles import single_step_shift


def criterion(number, label):
    def mark(fn):
        fn.criterion, fn.criterion_label = number, label
        return fn
    return mark


def one_based(tour):
    return tuple(int(c) + 1 for c in tour)


def timed(fn, *args):
    fn(*args)  # warm up imports and kernel dispatch
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


REF = (0, 3, 2, 4, 1)  # 1-based (1,4,3,5,2)


@criterion(1, "NSE worked example and rank trace")
def test_criterion_01_nse_worked_example():
    tour, elapsed = timed(nse_decode, REF, (2, 1, 2, 1))
    assert one_based(tour) == (1, 2, 3, 4, 5)
    assert [one_based(s) for s in nse_trace(REF, (2, 1, 2, 1))] == [
        (1, 3, 5, 4, 2), (1, 5, 3, 4, 2), (1, 3, 4, 5, 2), (1, 2, 3, 4, 5)]
    assert elapsed < 1e-3


@criterion(2, "DC worked example")
def test_criterion_02_dc_worked_example():
    tour, elapsed = timed(dc_decode, REF, np.array([2, 3, 1, 4]) - 1)
    assert one_based(tour) == (5, 3, 4, 1, 2)
    assert elapsed < 1e-3


@criterion(3, "wrap property: decode(v) == decode(v mod (n-1))")
def test_criterion_03_wrap():
    ref8 = list(range(8))
    for pos in range(7):
        seven, zero = [0] * 7, [0] * 7
        seven[pos] = 7
        assert single_step_shift(ref8, seven) == single_step_shift(ref8, zero)
        assert list(nse_decode(ref8, [nse_reduce(v, 8) for v in seven])) == \
            single_step_shift(ref8, zero)
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n = int(rng.integers(3, 16))
        v = int(rng.integers(0, 10 * n))
        pos = int(rng.integers(0, n - 1))
        ref = list(rng.permutation(n))
        raw = [0] * (n - 1)
        raw[pos] = v
        reduced = [0] * (n - 1)
        reduced[pos] = nse_reduce(v, n)
        assert list(nse_decode(ref, reduced)) == single_step_shift(ref, raw)


@criterion(4, "decoder closure at n = 5, 8, 51")
def test_criterion_04_closure():
    start = time.perf_counter()
    violations = 0
    for n in (5, 8, 51):
        rng = np.random.default_rng(n)
        ref = rng.permutation(n)
        identity = np.arange(n)
        for kind in Encoding:
            adapter = make_adapter(kind, n, reference=ref)
            tours = adapter.decode_many(random_population(adapter, rng, 10_000))
            violations += int((np.sort(tours, axis=1) != identity).any(axis=1).sum())
            if kind is Encoding.NSE:
                violations += int((tours[:, 0] != ref[0]).sum())
    assert violations == 0
    assert time.perf_counter() - start < 5.0


@criterion(5, "exhaustive n=4 against the list-shift oracle")
def test_criterion_05_exhaustive_n4():
    ref = [0, 1, 2, 3]
    covered = set()
    for chromo in itertools.product(range(3), repeat=3):
        tour = list(nse_decode(ref, chromo))
        assert tour == single_step_shift(ref, chromo)
        covered.add(tuple(tour))
    assert covered == {(0,) + p for p in itertools.permutations((1, 2, 3))}


@criterion(6, "berlin52 optimal tour costs 7542")
def test_criterion_06_berlin52(berlin52_opt):
    from nodeshift.tsplib import build_cost_matrix, load_instance
    start = time.perf_counter()
    matrix = build_cost_matrix(load_instance("berlin52"))
    cost = tour_cost(matrix, berlin52_opt)
    elapsed = time.perf_counter() - start
    assert cost == 7542
    assert elapsed < 0.1


@criterion(7, "elitism monotonicity and NN dominance, eil51 and berlin52")
@pytest.mark.slow
def test_criterion_07_monotone_and_nn(eil51, berlin52):
    violations = []
    for name, matrix in (("eil51", eil51), ("berlin52", berlin52)):
        n = matrix.shape[0]
        nn = best_nn_tour(matrix)
        nn_cost = tour_cost(matrix, nn)
        for kind in Encoding:
            for seeding in ("rand", "nn"):
                for k in range(30):
                    cfg = GaConfig(seeding=seeding, rng_seed=k)
                    rec = evolve(matrix, make_adapter(kind, n), cfg, nn_tour=nn)
                    hist = rec.best_cost_per_generation
                    if any(b > a for a, b in zip(hist, hist[1:])):
                        violations.append((name, kind.value, seeding, k, "increase"))
                    if seeding == "nn" and rec.final_best_cost > nn_cost:
                        violations.append((name, kind.value, seeding, k, "above NN"))
    assert violations == []


@criterion(8, "NSE-RAND hits the brute-force optimum on >= 18/20 small instances")
def test_criterion_08_small_optimum():
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    hits = 0
    for k in range(20):
        n = int(rng.integers(5, 9))
        matrix = random_euclidean(rng, n)
        _, best = brute_force_optimum(matrix)
        rec = evolve(matrix, make_adapter("nse", n),
                     GaConfig(population_size=100, iterations=500, rng_seed=k))
        hits += rec.final_best_cost == best
    assert hits >= 18
    assert time.perf_counter() - start < 60


@criterion(9, "eil51 trend: best NSE-RAND below best PR-RAND and DC-RAND")
@pytest.mark.slow
def test_criterion_09_eil51_trend(eil51):
    best = {}
    for kind in ("nse", "pr", "dc"):
        costs = [evolve(eil51, make_adapter(kind, 51),
                        GaConfig(population_size=100, iterations=1000, rng_seed=k))
                 .final_best_cost for k in range(10)]
        best[kind] = min(costs)
    print(f"eil51 best of 10: {best}")
    assert best["nse"] < best["pr"]
    assert best["nse"] < best["dc"]


@criterion(10, "MTZ export solved by HiGHS matches brute force")
def test_criterion_10_mtz_cross_validation(tmp_path):
    pytest.importorskip("highspy")
    rng = np.random.default_rng(10)
    for k in range(20):
        n = int(rng.integers(4, 9))
        matrix = random_symmetric(rng, n)
        path = tmp_path / f"m{k}.lp"
        path.write_text(export_mtz(matrix, f"rand{k}"))
        objective, values, _, _ = solve_lp_file(path)
        _, best = brute_force_optimum(matrix)
        assert round(objective) == best
        tour = tour_from_arc_solution(arcs_from_solution(values), n)
        assert tour_cost(matrix, tour) == best


def _lp_sections(text):
    sections, current = {}, None
    for line in text.splitlines():
        if line.startswith("\\"):
            continue
        if not line.startswith(" "):
            current = sections.setdefault(line, [])
        else:
            current.append(line.strip())
    return sections


@criterion(11, "MTZ model shape for n = 3..10")
def test_criterion_11_model_shape():
    for n in range(3, 11):
        matrix = random_symmetric(np.random.default_rng(n), n)
        model = build_mtz_model(matrix)
        assert len(model.binaries) == n * (n - 1)
        assert len(model.bounds) == n - 1
        assert len(model.degree_rows) == 2 * n
        assert len(model.subtour_rows) == (n - 1) * (n - 2)
        lp = _lp_sections(export_mtz(matrix))
        binaries = " ".join(lp["Binary"]).split()
        rows = [line.split(":")[0] for line in lp["Subject To"] if ":" in line]
        assert len(binaries) == n * (n - 1)
        assert len(lp["Bounds"]) == n - 1
        assert sum(r.startswith(("out_", "in_")) for r in rows) == 2 * n
        assert sum(r.startswith("mtz_") for r in rows) == (n - 1) * (n - 2)


@criterion(12, "bench twice with the same seed gives byte-identical CSVs")
def test_criterion_12_reproducible_bench(tmp_path):
    config = tmp_path / "campaign.toml"
    config.write_text(
        'instances = ["eil51", "berlin52"]\n'
        'variants = ["NSE-RAND", "NSE-NN", "PR-RAND", "PR-NN", "DC-RAND", "DC-NN"]\n'
        'repetitions = 3\nbase_seed = 123\ntuning = "per-class"\n'
        "[ga]\npopulation_size = 20\niterations = 20\n"
        "[grid]\npopulation_size = [10, 20]\niterations = [10]\n"
        "mutation_chance = [0.01, 0.05]\n")
    outputs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        assert main(["bench", str(config), "--output-dir", str(out)]) == 0
        # wall-clock files are excluded by design; see README
        files = sorted(p.name for p in out.glob("*.csv")
                       if p.name not in ("run_times.csv", "runtime.csv"))
        outputs.append({name: (out / name).read_bytes() for name in files})
    assert sorted(outputs[0]) == ["runs.csv", "summary.csv", "tuning.csv"]
    assert outputs[0] == outputs[1]
    assert len(read_runs(tmp_path / "run0")) == 2 * 6 * 3


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
