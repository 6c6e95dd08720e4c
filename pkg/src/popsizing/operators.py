"""Variation and selection operators shared by all engines.

Pure functions over explicit inputs plus a passed-in RandomSource, so the
same operators are trivially reusable across engines and runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ConfigurationError, Genome, Individual, Population, RandomSource


@dataclass(frozen=True, slots=True)
class OperatorConfig:
    """Crossover probability, per-bit mutation rate, tournament size."""

    pc: float = 0.9
    pm: float = 0.01
    tournament_k: int = 2

    def __post_init__(self):
        if not 0.0 <= self.pc <= 1.0:
            raise ConfigurationError(f"pc must lie in [0, 1], got {self.pc}")
        if not 0.0 <= self.pm <= 1.0:
            raise ConfigurationError(f"pm must lie in [0, 1], got {self.pm}")
        if self.tournament_k < 1:
            raise ConfigurationError(
                f"tournament_k must be >= 1, got {self.tournament_k}"
            )


def crossover_at(a: Genome, b: Genome, cut1: int, cut2: int) -> tuple[Genome, Genome]:
    """Exchange the segment [cut1, cut2) between two equal-length genomes."""
    if a.length != b.length:
        raise ConfigurationError("crossover requires equal genome lengths")
    if not 0 <= cut1 <= cut2 <= a.length:
        raise ValueError(f"bad cut positions ({cut1}, {cut2}) for length {a.length}")
    seg = (1 << cut2) - (1 << cut1)
    swapped = (a.bits ^ b.bits) & seg
    return Genome(a.bits ^ swapped, a.length), Genome(b.bits ^ swapped, b.length)


def two_point_crossover(a: Genome, b: Genome, rng: RandomSource) -> tuple[Genome, Genome]:
    """Two-point crossover with interior cuts drawn from {1, ..., L-1}.

    The two cuts are drawn independently and ordered; equal cuts exchange
    an empty segment, passing the parents through unchanged. Whether to
    cross at all (the pc coin) is decided by the calling engine.
    """
    if a.length != b.length:
        raise ConfigurationError("crossover requires equal genome lengths")
    if a.length < 2:
        raise ConfigurationError("two-point crossover needs genomes of length >= 2")
    c1 = 1 + rng.randint_below(a.length - 1)
    c2 = 1 + rng.randint_below(a.length - 1)
    if c1 > c2:
        c1, c2 = c2, c1
    return crossover_at(a, b, c1, c2)


def bitflip_mutation(g: Genome, pm: float, rng: RandomSource) -> Genome:
    """Flip each bit independently with probability pm.

    Sampled as a Binomial(L, pm) flip count followed by a uniform choice
    of distinct positions, which has exactly the per-bit independent
    distribution while drawing O(flips) random numbers.
    """
    if pm <= 0.0:
        if pm < 0.0:
            raise ConfigurationError(f"pm must lie in [0, 1], got {pm}")
        return g
    if pm >= 1.0:
        if pm > 1.0:
            raise ConfigurationError(f"pm must lie in [0, 1], got {pm}")
        return Genome(g.bits ^ ((1 << g.length) - 1), g.length)
    n = g.length
    u = rng.random()
    p = (1.0 - pm) ** n  # Binomial(n, pm) pmf at 0
    ratio = pm / (1.0 - pm)
    flips = 0
    while u > p and flips < n:
        u -= p
        p *= ratio * (n - flips) / (flips + 1)
        flips += 1
    if flips == 0:
        return g
    mask = 0
    placed = 0
    while placed < flips:
        pos = rng.randint_below(n)
        bit = 1 << pos
        if not mask & bit:
            mask |= bit
            placed += 1
    return Genome(g.bits ^ mask, g.length)


def tournament_select(pop: Population, k: int, rng: RandomSource) -> Individual:
    """Draw k members uniformly with replacement; return the fittest.

    Fitness ties go to the smallest birth_order, matching best_of.
    """
    if not pop:
        raise ValueError("tournament_select on empty population")
    if k < 1:
        raise ConfigurationError(f"tournament size must be >= 1, got {k}")
    n = len(pop)
    best = pop[rng.randint_below(n)]
    for _ in range(k - 1):
        ind = pop[rng.randint_below(n)]
        if ind.fitness > best.fitness or (
            ind.fitness == best.fitness and ind.birth_order < best.birth_order
        ):
            best = ind
    return best


def remove_worst(pop: Population, n: int) -> Population:
    """Return a copy of pop without its n lowest-fitness members.

    Ties are resolved by removing the largest birth_order first, so older
    equal-fitness members are protected. Survivor order is preserved.
    """
    if n > len(pop):
        raise ValueError(f"cannot remove {n} members from a population of {len(pop)}")
    if n == 0:
        return list(pop)
    order = sorted(
        range(len(pop)), key=lambda i: (pop[i].fitness, -pop[i].birth_order)
    )
    doomed = set(order[:n])
    return [ind for i, ind in enumerate(pop) if i not in doomed]
