"""Genetic algorithms for the TSP with node-shift, path and double-chromosome
encodings, plus TSPLIB I/O, nearest-neighbour seeding, an exact oracle for
small instances and a benchmark harness."""

from nodeshift.encodings import (Encoding, EncodingAdapter, dc_decode, make_adapter,
                                 nse_decode, nse_reduce, nse_trace, pr_decode)
from nodeshift.exact import brute_force_optimum, export_mtz, tour_from_arc_solution
from nodeshift.ga import GaConfig, RunRecord, Seeding, evolve
from nodeshift.heuristics import best_nn_tour, nearest_neighbour
from nodeshift.tours import canonical_tour, tour_cost, validate_tour
from nodeshift.tsplib import build_cost_matrix, load_instance, parse_tsplib

__version__ = "0.1.0"

__all__ = [
    "Encoding", "EncodingAdapter", "GaConfig", "RunRecord", "Seeding",
    "best_nn_tour", "brute_force_optimum", "build_cost_matrix", "canonical_tour",
    "dc_decode", "evolve", "export_mtz", "load_instance", "make_adapter",
    "nearest_neighbour", "nse_decode", "nse_reduce", "nse_trace", "parse_tsplib",
    "pr_decode", "tour_cost", "tour_from_arc_solution", "validate_tour",
]
