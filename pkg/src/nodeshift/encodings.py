"""Genotype-to-tour decoders and the adapter the GA works through.

Three encodings are provided:

``NSE`` (node shift)
    ``n - 1`` shift counts in ``[0, n - 2]``. The city at reference position
    ``i`` (``i >= 1``) is moved forward by ``shifts[i - 1]`` places, in
    reference order, circularly over positions ``1..n-1``. Position 0 is
    never touched.
``DC`` (double chromosome)
    An even-length guide of positions in ``[0, n - 1]``, read as consecutive
    swap pairs applied to a fixed map tour.
``PR`` (path representation)
    The tour itself.

Positions and cities are 0-based throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from nodeshift import kernels
from nodeshift.tours import TourError, as_tour, canonical_tour, validate_tour

__all__ = [
    "Encoding",
    "EncodingAdapter",
    "GenotypeError",
    "dc_decode",
    "make_adapter",
    "nse_decode",
    "nse_reduce",
    "nse_trace",
    "pr_decode",
    "random_genotype",
    "random_population",
    "seed_genotype",
]


class Encoding(str, enum.Enum):
    NSE = "NSE"
    DC = "DC"
    PR = "PR"


class GenotypeError(ValueError):
    """A genotype that breaks its encoding's length or gene bounds."""


def _nse_check(ref: np.ndarray, chromo: np.ndarray) -> None:
    n = ref.shape[0]
    if chromo.shape != (n - 1,):
        raise GenotypeError(f"NSE chromosome must have length {n - 1}, got {chromo.shape}")
    if chromo.size and (chromo.min() < 0 or chromo.max() > n - 2):
        raise GenotypeError(f"NSE shifts must lie in [0, {n - 2}]: {chromo.tolist()}")


def nse_trace(ref_tour, chromo) -> list[np.ndarray]:
    """Decode step by step, returning the tour after each gene is applied.

    This keeps a rank per reference position. Moving a city forward closes
    the gap it leaves (ranks in ``[old, new]`` drop by one); a move that
    wraps behind its start opens one (ranks in ``[new, old)`` rise by one).
    The last entry is the decoded tour.
    """
    ref = as_tour(ref_tour)
    chromo = np.asarray(chromo, dtype=np.int64)
    _nse_check(ref, chromo)
    n = len(ref)
    rank = list(range(n))
    states = []
    for i in range(1, n):
        old = rank[i]
        new = old + int(chromo[i - 1])
        if new > n - 1:
            new -= n - 1
        assert 1 <= new <= n - 1, "a single wrap must land inside the tour"
        if new > old:
            for j in range(n):
                if old <= rank[j] <= new:
                    rank[j] -= 1
        else:
            for j in range(n):
                if new <= rank[j] < old:
                    rank[j] += 1
        rank[i] = new
        tour = np.empty(n, dtype=np.int64)
        tour[rank] = ref
        states.append(tour)
    return states


def nse_decode(ref_tour, chromo) -> np.ndarray:
    """Tour encoded by the shift vector ``chromo`` relative to ``ref_tour``."""
    ref = as_tour(ref_tour)
    chromo = np.asarray(chromo, dtype=np.int64)
    _nse_check(ref, chromo)
    return kernels.nse_decode_many(ref, chromo[None, :])[0]


def nse_reduce(raw_shift: int, n: int) -> int:
    """Equivalent in-range shift: ``n - 1`` moves bring a city back home."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    return int(raw_shift) % (n - 1)


def dc_decode(map_tour, guide) -> np.ndarray:
    """Apply the swaps ``(guide[0], guide[1]), (guide[2], guide[3]), ...``."""
    tour = as_tour(map_tour)
    guide = np.asarray(guide, dtype=np.int64)
    n = len(tour)
    if guide.ndim != 1 or guide.shape[0] % 2:
        raise GenotypeError(f"DC guide must have even length, got {guide.shape}")
    if guide.size and (guide.min() < 0 or guide.max() > n - 1):
        raise GenotypeError(f"DC guide positions must lie in [0, {n - 1}]")
    return kernels.dc_decode_many(tour, guide[None, :])[0]


def pr_decode(genotype) -> np.ndarray:
    return as_tour(genotype)


@dataclass(frozen=True, eq=False)
class EncodingAdapter:
    """Everything the GA needs to know about one encoding on one instance.

    ``reference`` is the NSE reference tour or the DC map tour; PR ignores it.
    Genes of every encoding are integers in ``[low, high]``.
    """

    kind: Encoding
    reference: np.ndarray
    genome_length: int
    low: int = field(init=False)
    high: int = field(init=False)

    def __post_init__(self) -> None:
        problem = validate_tour(self.reference, len(self.reference))
        if problem:
            raise TourError(f"reference tour: {problem}")
        ref = np.array(self.reference, dtype=np.int64)
        ref.flags.writeable = False
        object.__setattr__(self, "reference", ref)
        n = len(ref)
        bounds = {Encoding.NSE: (0, n - 2), Encoding.DC: (0, n - 1),
                  Encoding.PR: (0, n - 1)}
        object.__setattr__(self, "low", bounds[self.kind][0])
        object.__setattr__(self, "high", bounds[self.kind][1])
        if self.kind is Encoding.NSE and self.genome_length != n - 1:
            raise GenotypeError(f"NSE genome length must be {n - 1}")
        if self.kind is Encoding.PR and self.genome_length != n:
            raise GenotypeError(f"PR genome length must be {n}")
        if self.kind is Encoding.DC and (self.genome_length < 2 or self.genome_length % 2):
            raise GenotypeError(f"DC guide length must be even and positive, "
                                f"got {self.genome_length}")

    @property
    def n(self) -> int:
        return len(self.reference)

    def check_genotype(self, genotype) -> str | None:
        g = np.asarray(genotype)
        if g.shape != (self.genome_length,):
            return f"expected {self.genome_length} genes, got shape {g.shape}"
        if self.kind is Encoding.PR:
            return validate_tour(g, self.n)
        if g.min() < self.low or g.max() > self.high:
            return f"genes must lie in [{self.low}, {self.high}]"
        return None

    def decode(self, genotype) -> np.ndarray:
        if self.kind is Encoding.NSE:
            return nse_decode(self.reference, genotype)
        if self.kind is Encoding.DC:
            return dc_decode(self.reference, genotype)
        return pr_decode(genotype)

    def decode_many(self, population: np.ndarray) -> np.ndarray:
        """Decode a 2-D array of genotypes, one per row, via the fast kernels."""
        if self.kind is Encoding.NSE:
            return kernels.nse_decode_many(self.reference, population)
        if self.kind is Encoding.DC:
            return kernels.dc_decode_many(self.reference, population)
        return np.asarray(population, dtype=np.int64)


def make_adapter(kind: Encoding | str, n: int, reference=None,
                 guide_length: int | None = None) -> EncodingAdapter:
    """Adapter for ``kind`` on ``n`` cities.

    The reference defaults to the identity tour. The DC guide length defaults
    to ``n`` rounded down to an even number.
    """
    kind = Encoding(kind.upper())
    ref = canonical_tour(n) if reference is None else as_tour(reference, n)
    if kind is Encoding.NSE:
        length = n - 1
    elif kind is Encoding.PR:
        length = n
    else:
        length = guide_length if guide_length is not None else n - n % 2
    return EncodingAdapter(kind, ref, length)


def random_population(adapter: EncodingAdapter, rng: np.random.Generator,
                      size: int) -> np.ndarray:
    """``size`` uniform random genotypes as rows of an ``int64`` array."""
    if adapter.kind is Encoding.PR:
        base = np.tile(np.arange(adapter.n, dtype=np.int64), (size, 1))
        return rng.permuted(base, axis=1)
    return rng.integers(adapter.low, adapter.high, size=(size, adapter.genome_length),
                        endpoint=True, dtype=np.int64)


def random_genotype(adapter: EncodingAdapter, rng: np.random.Generator) -> np.ndarray:
    return random_population(adapter, rng, 1)[0]


def seed_genotype(adapter: EncodingAdapter, tour) -> tuple[EncodingAdapter, np.ndarray]:
    """Genotype decoding exactly to ``tour``.

    NSE and DC re-anchor the adapter on ``tour`` and return the neutral
    genotype (all zero shifts, or self-swaps), so the returned adapter must
    be used from then on.
    """
    tour = as_tour(tour, adapter.n)
    if adapter.kind is Encoding.PR:
        return adapter, tour
    # zero shifts for NSE; for DC, repeated (0, 0) self-swaps
    seeded = EncodingAdapter(adapter.kind, tour, adapter.genome_length)
    return seeded, np.zeros(adapter.genome_length, dtype=np.int64)
