"""Command-line interface: ``nodeshift <command> ...``.

Cities are printed 1-based, as in TSPLIB files.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from nodeshift import __version__, kernels
from nodeshift.bench import (DEFAULT_GRID, VARIANTS, Campaign, CampaignError,
                             grid_search, parse_variant, run_campaign)
from nodeshift.encodings import dc_decode, make_adapter, nse_trace
from nodeshift.exact import export_mtz
from nodeshift.ga import GaConfig, Seeding, evolve
from nodeshift.heuristics import best_nn_tour
from nodeshift.tours import format_tour, parse_tour, tour_cost
from nodeshift.tsplib import build_cost_matrix, load_instance


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _add_ga_flags(p: argparse.ArgumentParser) -> None:
    d = GaConfig()
    p.add_argument("--population", type=int, default=d.population_size)
    p.add_argument("--iterations", type=int, default=d.iterations)
    p.add_argument("--mutation", type=float, default=d.mutation_chance)
    p.add_argument("--elitism", type=int, default=d.elitism_count)
    p.add_argument("--tournament", type=int, default=d.tournament_size)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guide-length", type=int, default=None,
                   help="DC guide length (default: n rounded down to even)")


def _config(args, seeding: Seeding) -> GaConfig:
    return GaConfig(args.population, args.iterations, args.mutation, args.elitism,
                    args.tournament, seeding, args.seed)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    matrix = build_cost_matrix(instance)
    adapter = make_adapter(args.encoding, instance.n, guide_length=args.guide_length)
    record = evolve(matrix, adapter, _config(args, Seeding(args.seeding.upper())))
    print(f"instance   {instance.name} ({instance.n} cities)")
    print(f"variant    {args.encoding.upper()}-{args.seeding.upper()}")
    if record.nn_cost is not None:
        print(f"nn cost    {record.nn_cost}")
    print(f"best cost  {record.final_best_cost}")
    print(f"tour       {format_tour(record.final_best_tour)}")
    print(f"time       {record.wall_clock_ms} ms ({kernels.BACKEND} kernels)")
    if args.history:
        print("history    " + " ".join(map(str, record.best_cost_per_generation)))
    return 0


def cmd_nn(args) -> int:
    instance = load_instance(args.instance)
    matrix = build_cost_matrix(instance)
    tour = best_nn_tour(matrix)
    print(f"{instance.name}: nearest-neighbour cost {tour_cost(matrix, tour)}")
    print(format_tour(tour))
    return 0


def cmd_decode(args) -> int:
    ref = parse_tour(args.reference)
    genes = np.array(_ints(args.chromosome), dtype=np.int64)
    print(f"reference  ({format_tour(ref, ',')})")
    if args.encoding == "dc":
        tour = dc_decode(ref, genes - 1)
        print(f"tour       ({format_tour(tour, ',')})")
        return 0
    for step, (gene, state) in enumerate(zip(genes, nse_trace(ref, genes)), start=1):
        city = ref[step] + 1
        print(f"step {step}: move city {city} forward {gene} -> ({format_tour(state, ',')})")
    return 0


def cmd_export_lp(args) -> int:
    instance = load_instance(args.instance)
    text = export_mtz(build_cost_matrix(instance), instance.name)
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote MTZ model for {instance.name} ({instance.n} cities) to {args.out}")
    return 0


def cmd_tune(args) -> int:
    instance = load_instance(args.instance)
    matrix = build_cost_matrix(instance)
    parse_variant(args.variant)
    grid = {"population_size": args.populations or DEFAULT_GRID["population_size"],
            "iterations": args.iteration_counts or DEFAULT_GRID["iterations"],
            "mutation_chance": args.mutations or DEFAULT_GRID["mutation_chance"]}
    trials = grid_search(matrix, args.variant, grid, seed=args.seed,
                         guide_length=args.guide_length, workers=args.workers)
    best = min(range(len(trials)), key=lambda k: (trials[k][1], k))
    for k, (cfg, cost) in enumerate(trials):
        mark = "*" if k == best else " "
        print(f"{mark} pop={cfg.population_size:<5d} iter={cfg.iterations:<5d} "
              f"mut={cfg.mutation_chance:<5g} cost={cost}")
    cfg = trials[best][0]
    print(f"best: --population {cfg.population_size} --iterations {cfg.iterations} "
          f"--mutation {cfg.mutation_chance}")
    return 0


def cmd_bench(args) -> int:
    campaign = Campaign.from_file(args.config)
    overrides = {}
    if args.output_dir:
        overrides["output_dir"] = Path(args.output_dir)
    if args.workers:
        overrides["workers"] = args.workers
    if overrides:
        campaign = Campaign(**{**campaign.__dict__, **overrides})
    result = run_campaign(campaign, progress=print)
    print(f"{'instance':<10} {'variant':<9} {'best':>8} {'mean':>10} {'nn':>8} {'ms':>8}")
    for s in result.summaries:
        best = "-" if s.best_cost is None else s.best_cost
        mean = "-" if s.mean_cost is None else f"{s.mean_cost:.1f}"
        print(f"{s.instance:<10} {s.variant:<9} {best:>8} {mean:>10} {s.nn_cost:>8} "
              f"{s.mean_wall_ms:>8.0f}")
    failed = sum(not r.ok for r in result.runs)
    print(f"results in {result.output_dir}" + (f" ({failed} failed runs)" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodeshift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one GA on an instance")
    p.add_argument("instance", help=".tsp file or bundled name such as berlin52")
    p.add_argument("--encoding", choices=("nse", "pr", "dc"), default="nse")
    p.add_argument("--seeding", choices=("rand", "nn"), default="rand")
    p.add_argument("--history", action="store_true", help="print best cost per generation")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run a campaign described by a TOML file")
    p.add_argument("config")
    p.add_argument("--output-dir", help="overrides output_dir from the file; without "
                   "either, $NODESHIFT_OUTPUT_DIR or ./results is used")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tune", help="grid-search population, iterations and mutation")
    p.add_argument("instance")
    p.add_argument("--variant", default="NSE-RAND", choices=VARIANTS,
                   type=str.upper)
    p.add_argument("--populations", type=int, nargs="+")
    p.add_argument("--iteration-counts", type=int, nargs="+")
    p.add_argument("--mutations", type=float, nargs="+")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guide-length", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("nn", help="best nearest-neighbour tour over all start cities")
    p.add_argument("instance")
    p.set_defaults(func=cmd_nn)

    p = sub.add_parser("decode", help="show how a chromosome decodes")
    p.add_argument("--reference", required=True, help="1-based tour, e.g. 1,4,3,5,2")
    p.add_argument("--chromosome", required=True,
                   help="NSE shifts, or 1-based DC swap positions")
    p.add_argument("--encoding", choices=("nse", "dc"), default="nse")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("export-lp", help="write the MTZ model as an LP file")
    p.add_argument("instance")
    p.add_argument("out")
    p.set_defaults(func=cmd_export_lp)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError, CampaignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
