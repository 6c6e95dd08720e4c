"""Data model shared by every engine: genomes, individuals, populations,
the seeded random source, and the evaluation counter.

Everything downstream (operators, engines, harness) builds on these types.
Individuals are immutable in genome and fitness and mutable only in their
age bookkeeping, because no engine here ever re-evaluates a survivor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

_MASK64 = (1 << 64) - 1


class ConfigurationError(Exception):
    """Raised for invalid user-supplied configuration; aborts the run."""


def derive_run_seed(master_seed: int, run_index: int) -> int:
    """Derive the seed for run `run_index` from a 64-bit master seed.

    Uses the SplitMix64 finalizer over (master_seed, run_index), so adding
    runs to an experiment never perturbs the seeds of earlier runs.
    """
    if run_index < 0:
        raise ConfigurationError(f"run_index must be >= 0, got {run_index}")
    z = (master_seed + (run_index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class RandomSource:
    """Deterministic random stream for one run.

    Backed by numpy's PCG64 (a documented 64-bit-seed generator with a
    published reference stream); `algorithm_id` is recorded in every output
    file so results can be replayed cross-platform. All draws are served
    from an internal block of uniform doubles, which keeps per-draw
    overhead low without changing determinism.
    """

    algorithm_id = "pcg64"
    _BLOCK = 8192

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))
        self._buf: list[float] = []
        self._pos = 0

    def _refill(self) -> None:
        self._buf = self._gen.random(self._BLOCK).tolist()
        self._pos = 0

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        if self._pos >= len(self._buf):
            self._refill()
        u = self._buf[self._pos]
        self._pos += 1
        return u

    def randint_below(self, n: int) -> int:
        """Uniform integer in {0, ..., n-1}."""
        if self._pos >= len(self._buf):
            self._refill()
        u = self._buf[self._pos]
        self._pos += 1
        i = int(u * n)
        return i if i < n else n - 1  # guard the half-ulp edge at u ~ 1

    def random_bits(self, n: int) -> int:
        """Uniform n-bit integer, assembled 32 bits per draw."""
        v = 0
        for _ in range((n + 31) // 32):
            if self._pos >= len(self._buf):
                self._refill()
            u = self._buf[self._pos]
            self._pos += 1
            w = int(u * 4294967296.0)
            if w > 0xFFFFFFFF:
                w = 0xFFFFFFFF
            v = (v << 32) | w
        return v & ((1 << n) - 1)


@dataclass(frozen=True, slots=True)
class Genome:
    """Fixed-length bit string stored as an unsigned integer.

    Bit i of `bits` is position i of the string, so `as_string()[i]`
    equals `(bits >> i) & 1`.
    """

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ConfigurationError(f"genome length must be >= 1, got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError("genome bits out of range for declared length")

    def ones(self) -> int:
        return self.bits.bit_count()

    def hamming(self, other: "Genome") -> int:
        if other.length != self.length:
            raise ValueError("hamming distance requires equal lengths")
        return (self.bits ^ other.bits).bit_count()

    def as_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    @classmethod
    def from_string(cls, s: str) -> "Genome":
        if not s or any(ch not in "01" for ch in s):
            raise ValueError(f"genome string must be non-empty over 0/1, got {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(bits, len(s))


def random_genome(length: int, rng: RandomSource) -> Genome:
    return Genome(rng.random_bits(length), length)


@dataclass(slots=True)
class Individual:
    """A genome with cached fitness and age bookkeeping.

    `rlt` is the remaining lifetime in generations; engines that do not
    use lifetimes leave it as None. `birth_order` is a per-run creation
    index and breaks every best/worst fitness tie deterministically.
    """

    genome: Genome
    fitness: float
    birth_order: int
    age: int = 0
    rlt: int | None = None


Population = list[Individual]


@dataclass(slots=True)
class EvalCounter:
    """Counts fitness evaluations; exactly one increment per application."""

    count: int = 0


@runtime_checkable
class FitnessFunction(Protocol):
    length: int
    optimum: float

    def __call__(self, genome: Genome) -> float: ...


def evaluate(genome: Genome, problem: FitnessFunction, counter: EvalCounter) -> float:
    """Apply `problem` to `genome`, incrementing `counter` by exactly 1."""
    if genome.length != problem.length:
        raise ConfigurationError(
            f"genome length {genome.length} does not match problem length {problem.length}"
        )
    counter.count += 1
    return problem(genome)


def evaluate_many(
    genomes: list[Genome], problem: FitnessFunction, counter: EvalCounter
) -> list[float]:
    """Evaluate a batch, one counter increment per genome.

    Problems may provide a `fitness_many` batch method; results are
    identical to per-genome calls, batching only saves dispatch overhead.
    """
    for g in genomes:
        if g.length != problem.length:
            raise ConfigurationError(
                f"genome length {g.length} does not match problem length {problem.length}"
            )
    counter.count += len(genomes)
    many = getattr(problem, "fitness_many", None)
    if many is not None:
        return many(genomes)
    return [problem(g) for g in genomes]


def best_of(pop: Population) -> Individual:
    """Member with maximum fitness; ties go to the smallest birth_order."""
    if not pop:
        raise ValueError("best_of on empty population")
    best = pop[0]
    for ind in pop:
        if ind.fitness > best.fitness or (
            ind.fitness == best.fitness and ind.birth_order < best.birth_order
        ):
            best = ind
    return best


def round_half_away(x: float) -> int:
    """Round to nearest integer, halves away from zero."""
    if x >= 0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)
