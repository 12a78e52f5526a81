"""Benchmark campaigns: parameter tuning, repeated GA runs, reports.

A campaign runs every (instance, variant) pair ``repetitions`` times with
seeds ``base_seed + run_index``. Results land in the output directory:

``runs.csv``, ``summary.csv``, ``tuning.csv``, ``boxplot_<instance>.svg``
    Depend only on the campaign definition; identical campaigns give
    byte-identical files.
``run_times.csv``, ``runtime.csv``, ``runtime.svg``
    Wall-clock measurements, kept apart because they never repeat exactly.
"""

from __future__ import annotations

import csv
import itertools
import logging
import os
import sys
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from nodeshift.encodings import Encoding, make_adapter
from nodeshift.ga import GaConfig, RunRecord, Seeding, evolve
from nodeshift.heuristics import best_nn_tour
from nodeshift.plots import bar_chart_svg, emit_boxplot_svg
from nodeshift.tours import format_tour
from nodeshift.tsplib import build_cost_matrix, load_instance

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "DEFAULT_GRID",
    "SCHEMA_VERSION",
    "VARIANTS",
    "Campaign",
    "CampaignError",
    "CampaignResult",
    "RunResult",
    "SummaryRow",
    "default_output_dir",
    "emit_runtime_report",
    "grid_search",
    "parse_variant",
    "read_runs",
    "read_summary",
    "run_campaign",
    "size_class",
    "summarize",
    "tune_parameters",
]

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
VARIANTS = ("NSE-RAND", "NSE-NN", "PR-RAND", "PR-NN", "DC-RAND", "DC-NN")
DEFAULT_GRID = {
    "population_size": (50, 100, 500, 1000),
    "iterations": (100, 500, 1000, 2000),
    "mutation_chance": (0.01, 0.03, 0.05, 0.1),
}
OUTPUT_ENV = "NODESHIFT_OUTPUT_DIR"

RUN_COLUMNS = ("schema", "instance", "variant", "run_index", "seed", "population",
               "iterations", "mutation", "elitism", "tournament", "status",
               "final_best_cost", "tour", "error")
SUMMARY_COLUMNS = ("schema", "instance", "variant", "n", "runs", "failed", "best_cost",
                   "mean_cost", "worst_cost", "nn_cost", "costs")
TUNING_COLUMNS = ("schema", "tuned_on", "variant", "population", "iterations",
                  "mutation", "seed", "best_cost", "chosen")
RUNTIME_COLUMNS = ("schema", "instance", "variant", "runs", "mean_wall_ms")
RUN_TIME_COLUMNS = ("schema", "instance", "variant", "run_index", "wall_ms")


class CampaignError(RuntimeError):
    pass


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "results"))


def parse_variant(text: str) -> tuple[Encoding, Seeding]:
    """``"NSE-RAND"`` -> ``(Encoding.NSE, Seeding.RAND)``."""
    try:
        enc, seeding = text.upper().split("-")
        return Encoding(enc), Seeding(seeding)
    except ValueError:
        raise ValueError(f"unknown variant {text!r}; expected one of {VARIANTS}") from None


def size_class(n: int) -> int:
    """Benchmark size class: 1 below 100 cities, 2 up to 129, 3 beyond."""
    if n < 100:
        return 1
    return 2 if n < 130 else 3


@dataclass(frozen=True)
class Campaign:
    """Everything needed to reproduce a benchmark campaign.

    ``tuning`` is ``"per-class"`` (grid search on the largest instance of each
    size class, the default), ``"per-instance"`` or ``"none"`` (use ``ga`` as
    is).
    Seeding and seed in ``ga`` are overridden per run.
    """

    instances: tuple[str, ...]
    variants: tuple[str, ...] = VARIANTS
    repetitions: int = 30
    ga: GaConfig = field(default_factory=GaConfig)
    base_seed: int = 0
    output_dir: Path = field(default_factory=default_output_dir)
    tuning: str = "per-class"
    grid: Mapping[str, Sequence] = field(default_factory=lambda: dict(DEFAULT_GRID))
    guide_length: int | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.variants:
            raise ValueError("at least one variant is required")
        if not self.instances:
            raise ValueError("at least one instance is required")
        for v in self.variants:
            parse_variant(v)
        if self.tuning not in ("none", "per-class", "per-instance"):
            raise ValueError(f"unknown tuning mode {self.tuning!r}")
        unknown = set(self.grid) - set(DEFAULT_GRID)
        if unknown:
            raise ValueError(f"unknown grid parameters {sorted(unknown)}")
        object.__setattr__(self, "variants", tuple(v.upper() for v in self.variants))
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    def seed(self, run_index: int) -> int:
        return self.base_seed + run_index

    @classmethod
    def from_file(cls, path: str | Path) -> Campaign:
        """Load a TOML campaign file; relative instance paths follow the file."""
        path = Path(path)
        with path.open("rb") as fh:
            data = tomllib.load(fh)
        base = path.parent
        instances = []
        for item in data.pop("instances"):
            candidate = base / item
            instances.append(str(candidate) if candidate.exists() else item)
        ga = GaConfig(**data.pop("ga", {}))
        grid = {k: tuple(v) for k, v in data.pop("grid", DEFAULT_GRID).items()}
        if "output_dir" in data:
            data["output_dir"] = base / data["output_dir"]
        if "variants" in data:
            data["variants"] = tuple(data["variants"])
        return cls(instances=tuple(instances), ga=ga, grid=grid, **data)


@dataclass(frozen=True)
class RunResult:
    instance: str
    variant: str
    run_index: int
    seed: int
    config: GaConfig
    record: RunRecord | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.record is not None


@dataclass(frozen=True)
class SummaryRow:
    instance: str
    variant: str
    n: int
    per_run_costs: tuple[int, ...]
    failed: int
    nn_cost: int
    mean_wall_ms: float

    @property
    def best_cost(self) -> int | None:
        return min(self.per_run_costs) if self.per_run_costs else None

    @property
    def mean_cost(self) -> float | None:
        if not self.per_run_costs:
            return None
        return sum(self.per_run_costs) / len(self.per_run_costs)


@dataclass
class CampaignResult:
    runs: list[RunResult]
    summaries: list[SummaryRow]
    tuned: dict[tuple[str, str], GaConfig]
    output_dir: Path


def _run(task: tuple) -> RunResult:
    name, matrix, variant, config, guide_length, nn_tour, run_index = task
    enc, _ = parse_variant(variant)
    try:
        adapter = make_adapter(enc, matrix.shape[0], guide_length=guide_length)
        record = evolve(matrix, adapter, config, nn_tour=nn_tour)
    except Exception as exc:  # noqa: BLE001
        log.exception("run %s %s #%d failed", name, variant, run_index)
        return RunResult(name, variant, run_index, config.rng_seed, config,
                         error=f"{type(exc).__name__}: {exc}")
    return RunResult(name, variant, run_index, config.rng_seed, config, record)


def _map(tasks: list[tuple], workers: int) -> list[RunResult]:
    if workers <= 1 or len(tasks) <= 1:
        return [_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, tasks, chunksize=1))


def grid_search(matrix: np.ndarray, variant: str, grid: Mapping[str, Sequence] | None = None,
                base: GaConfig | None = None, seed: int = 0,
                guide_length: int | None = None, nn_tour=None,
                workers: int = 1) -> list[tuple[GaConfig, int]]:
    """Run every grid combination once with ``seed``; ``(config, cost)`` pairs.

    Combinations are ordered by population, then iterations, then mutation.
    """
    grid = {**DEFAULT_GRID, **(grid or {})}
    base = base or GaConfig()
    _, seeding = parse_variant(variant)
    if seeding is Seeding.NN and nn_tour is None:
        nn_tour = best_nn_tour(matrix)
    configs = [replace(base, population_size=p, iterations=i, mutation_chance=m,
                       seeding=seeding, rng_seed=seed,
                       elitism_count=min(base.elitism_count, p - 1),
                       tournament_size=min(base.tournament_size, p))
               for p, i, m in itertools.product(sorted(grid["population_size"]),
                                                sorted(grid["iterations"]),
                                                sorted(grid["mutation_chance"]))]
    tasks = [("tuning", matrix, variant, c, guide_length, nn_tour, k)
             for k, c in enumerate(configs)]
    results = _map(tasks, workers)
    failed = [r for r in results if not r.ok]
    if failed:
        raise CampaignError(f"tuning run failed: {failed[0].error}")
    return [(r.config, r.record.final_best_cost) for r in results]


def tune_parameters(matrix: np.ndarray, variant: str,
                    grid: Mapping[str, Sequence] | None = None, **kwargs) -> GaConfig:
    """Cheapest grid combination; ties favour smaller population, then
    fewer iterations, then lower mutation. Keyword arguments go to
    :func:`grid_search`."""
    trials = grid_search(matrix, variant, grid, **kwargs)
    best = min(range(len(trials)), key=lambda k: (trials[k][1], k))
    return trials[best][0]


def summarize(runs: Iterable[RunResult], sizes: Mapping[str, int],
              nn_costs: Mapping[str, int]) -> list[SummaryRow]:
    groups: dict[tuple[str, str], list[RunResult]] = {}
    for r in runs:
        groups.setdefault((r.instance, r.variant), []).append(r)
    rows = []
    for (name, variant), members in groups.items():
        done = [r for r in sorted(members, key=lambda r: r.run_index) if r.ok]
        walls = [r.record.wall_clock_ms for r in done]
        rows.append(SummaryRow(
            instance=name, variant=variant, n=sizes[name],
            per_run_costs=tuple(r.record.final_best_cost for r in done),
            failed=len(members) - len(done), nn_cost=nn_costs[name],
            mean_wall_ms=sum(walls) / len(walls) if walls else 0.0,
        ))
    return rows


def _writer(path: Path, columns: Sequence[str]):
    fh = path.open("w", newline="", encoding="utf-8")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(columns)
    return fh, writer


def _write_runs(path: Path, runs: Sequence[RunResult]) -> None:
    fh, w = _writer(path, RUN_COLUMNS)
    with fh:
        for r in runs:
            c = r.config
            cost = r.record.final_best_cost if r.ok else ""
            tour = format_tour(r.record.final_best_tour) if r.ok else ""
            w.writerow([SCHEMA_VERSION, r.instance, r.variant, r.run_index, r.seed,
                        c.population_size, c.iterations, repr(c.mutation_chance),
                        c.elitism_count, c.tournament_size,
                        "ok" if r.ok else "failed", cost, tour, r.error])


def _write_summary(path: Path, rows: Sequence[SummaryRow]) -> None:
    fh, w = _writer(path, SUMMARY_COLUMNS)
    with fh:
        for s in rows:
            w.writerow([SCHEMA_VERSION, s.instance, s.variant, s.n, len(s.per_run_costs),
                        s.failed, "" if s.best_cost is None else s.best_cost,
                        "" if s.mean_cost is None else repr(s.mean_cost),
                        max(s.per_run_costs) if s.per_run_costs else "", s.nn_cost,
                        " ".join(map(str, s.per_run_costs))])


def emit_runtime_report(rows: Sequence[SummaryRow], out_dir: str | Path) -> tuple[Path, Path]:
    """Mean wall-clock per (instance, variant) as ``runtime.csv`` and ``runtime.svg``."""
    out_dir = Path(out_dir)
    csv_path, svg_path = out_dir / "runtime.csv", out_dir / "runtime.svg"
    fh, w = _writer(csv_path, RUNTIME_COLUMNS)
    with fh:
        for s in rows:
            w.writerow([SCHEMA_VERSION, s.instance, s.variant, len(s.per_run_costs),
                        repr(float(s.mean_wall_ms))])
    chart: dict[str, dict[str, float]] = {}
    for s in rows:
        chart.setdefault(s.instance, {})[s.variant] = s.mean_wall_ms
    svg_path.write_text(bar_chart_svg(chart, "Mean runtime per run"), encoding="utf-8")
    return csv_path, svg_path


def read_summary(out_dir: str | Path) -> list[SummaryRow]:
    """Rebuild :class:`SummaryRow` objects from ``summary.csv`` and ``runtime.csv``."""
    out_dir = Path(out_dir)
    with (out_dir / "runtime.csv").open(newline="", encoding="utf-8") as fh:
        walls = {(r["instance"], r["variant"]): float(r["mean_wall_ms"])
                 for r in csv.DictReader(fh)}
    rows = []
    with (out_dir / "summary.csv").open(newline="", encoding="utf-8") as fh:
        for r in csv.DictReader(fh):
            if int(r["schema"]) != SCHEMA_VERSION:
                raise ValueError(f"unsupported summary schema {r['schema']}")
            rows.append(SummaryRow(
                instance=r["instance"], variant=r["variant"], n=int(r["n"]),
                per_run_costs=tuple(int(c) for c in r["costs"].split()),
                failed=int(r["failed"]), nn_cost=int(r["nn_cost"]),
                mean_wall_ms=walls[r["instance"], r["variant"]],
            ))
    return rows


def read_runs(out_dir: str | Path) -> list[dict[str, str]]:
    with (Path(out_dir) / "runs.csv").open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _tune_all(campaign: Campaign, loaded: dict, nn_tours: dict) -> tuple[dict, list]:
    """Tuned config per (instance, variant) plus rows for ``tuning.csv``."""
    if campaign.tuning == "none":
        return {}, []
    if campaign.tuning == "per-class":
        classes: dict[int, list[str]] = {}
        for name, (_, matrix) in loaded.items():
            classes.setdefault(size_class(matrix.shape[0]), []).append(name)
        targets = {max(names, key=lambda nm: (loaded[nm][1].shape[0], nm)): names
                   for names in classes.values()}
    else:
        targets = {name: [name] for name in loaded}

    tuned, rows = {}, []
    for target in sorted(targets):
        matrix = loaded[target][1]
        for variant in campaign.variants:
            trials = grid_search(matrix, variant, campaign.grid, base=campaign.ga,
                                 seed=campaign.base_seed, guide_length=campaign.guide_length,
                                 nn_tour=nn_tours[target], workers=campaign.workers)
            chosen = min(range(len(trials)), key=lambda k: (trials[k][1], k))
            for k, (cfg, cost) in enumerate(trials):
                rows.append([SCHEMA_VERSION, target, variant, cfg.population_size,
                             cfg.iterations, repr(cfg.mutation_chance), cfg.rng_seed,
                             cost, int(k == chosen)])
            for member in targets[target]:
                tuned[member, variant] = trials[chosen][0]
            log.info("tuned %s on %s: %s", variant, target, trials[chosen][0])
    return tuned, rows


def run_campaign(campaign: Campaign,
                 progress: Callable[[str], None] | None = None) -> CampaignResult:
    """Tune if requested, run everything, write all outputs."""
    loaded = {}
    for source in campaign.instances:
        try:
            instance = load_instance(source)
            loaded[instance.name] = (instance, build_cost_matrix(instance))
        except (OSError, ValueError) as exc:
            raise CampaignError(f"cannot load instance {source}: {exc}") from exc
    if len(loaded) != len(campaign.instances):
        raise CampaignError("instance names must be unique within a campaign")
    nn_tours = {name: best_nn_tour(m) for name, (_, m) in loaded.items()}
    nn_costs = {name: int(m[t, np.roll(t, -1)].sum())
                for (name, (_, m)), t in zip(loaded.items(), nn_tours.values())}

    out = campaign.output_dir
    out.mkdir(parents=True, exist_ok=True)
    tuned, tuning_rows = _tune_all(campaign, loaded, nn_tours)
    if tuning_rows:
        fh, w = _writer(out / "tuning.csv", TUNING_COLUMNS)
        with fh:
            w.writerows(tuning_rows)

    tasks = []
    for name, (_, matrix) in loaded.items():
        for variant in campaign.variants:
            _, seeding = parse_variant(variant)
            base = tuned.get((name, variant), campaign.ga)
            for k in range(campaign.repetitions):
                cfg = replace(base, seeding=seeding, rng_seed=campaign.seed(k))
                tasks.append((name, matrix, variant, cfg, campaign.guide_length,
                              nn_tours[name], k))
    if progress:
        progress(f"{len(tasks)} runs on {len(loaded)} instance(s)")
    runs = _map(tasks, campaign.workers)
    order = {v: k for k, v in enumerate(campaign.variants)}
    runs.sort(key=lambda r: (r.instance, order[r.variant], r.run_index))

    sizes = {name: m.shape[0] for name, (_, m) in loaded.items()}
    summaries = summarize(runs, sizes, nn_costs)
    _write_runs(out / "runs.csv", runs)
    _write_summary(out / "summary.csv", summaries)
    fh, w = _writer(out / "run_times.csv", RUN_TIME_COLUMNS)
    with fh:
        for r in runs:
            w.writerow([SCHEMA_VERSION, r.instance, r.variant, r.run_index,
                        r.record.wall_clock_ms if r.ok else ""])
    emit_runtime_report(summaries, out)
    for name in sorted(loaded):
        groups = {s.variant: s.per_run_costs for s in summaries
                  if s.instance == name and s.per_run_costs}
        if groups:
            emit_boxplot_svg(groups, out / f"boxplot_{name}.svg",
                             title=f"{name}: best cost per run")
    return CampaignResult(runs, summaries, tuned, out)
