"""Single-collection engines: APGA, GAVaPS, and a fixed-size steady-state
baseline (TGA). Each is a stepwise state machine with trace hooks.

Budget rule shared by every engine: a step or batch runs only when its
full evaluation cost still fits in the remaining budget, so a run's
evaluation count never exceeds max_evaluations. Success is detected at
the exact evaluation that reaches the target; the step in progress is
completed (bookkeeping only, no further evaluations) before returning.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field

from .core import (
    ConfigurationError,
    EvalCounter,
    Individual,
    Population,
    RandomSource,
    best_of,
    evaluate_many,
    random_genome,
    round_half_away,
)
from .lifetime import LifetimeConfig, bilinear_lifetime, compute_stats, stats_from_fits
from .operators import OperatorConfig, bitflip_mutation, tournament_select, two_point_crossover


@dataclass(frozen=True, slots=True)
class StopCondition:
    """Stop at target fitness (exact optimum) or evaluation budget,
    whichever happens first. At least one bound must be given."""

    target_fitness: float | None = None
    max_evaluations: int | None = None

    def __post_init__(self):
        if self.target_fitness is None and self.max_evaluations is None:
            raise ConfigurationError("stop condition needs a target or a budget")
        if self.max_evaluations is not None and self.max_evaluations < 1:
            raise ConfigurationError(
                f"max_evaluations must be >= 1, got {self.max_evaluations}"
            )


class TraceSink:
    """Collects per-step samples and engine events for later emission.

    Sample rows are tuples owned by the engine: (evaluations, generation,
    size) for single-population engines, (evaluations, min_size, max_size)
    for the multi-population scheme. Samples are monotone in evaluations.
    """

    def __init__(self):
        self.samples: list[tuple] = []
        self.events: list[tuple] = []

    def sample(self, *row) -> None:
        self.samples.append(row)

    def event(self, *row) -> None:
        self.events.append(row)


@dataclass(slots=True)
class RunRecord:
    """Outcome of one independent run."""

    algorithm: str
    success: bool
    evaluations: int
    best_fitness: float
    termination: str  # "target" | "budget" | "extinction" | "explosion"
    size_at_success: int | None = None
    sizes: list[int] | None = None  # size per generation, index 0 = initial
    deaths: list[int] | None = None  # per-step removal counts (APGA audit)
    extra: dict = field(default_factory=dict)


def _hit_index(fits: list[float], target: float | None) -> int | None:
    if target is None:
        return None
    for i, f in enumerate(fits):
        if f >= target:
            return i
    return None


def _initial_hit_evals(pop: Population, target: float | None) -> int | None:
    # birth_order equals evaluation order for a freshly initialized population
    if target is None:
        return None
    for ind in pop:
        if ind.fitness >= target:
            return ind.birth_order + 1
    return None


# ---------------------------------------------------------------------------
# sorted pool: population kept ordered best-first for O(log N) steady-state
# iterations; semantics match operators.remove_worst / tournament_select
# (cross-checked by tests)

PoolEntry = tuple[float, int, Individual]  # (-fitness, birth_order, individual)


def pool_from(pop: Population) -> list[PoolEntry]:
    return sorted((-ind.fitness, ind.birth_order, ind) for ind in pop)


def pool_insert(pool: list[PoolEntry], ind: Individual) -> None:
    insort(pool, (-ind.fitness, ind.birth_order, ind))


def pool_remove_worst(pool: list[PoolEntry]) -> Individual:
    # worst sorts last: lowest fitness, then largest birth_order
    return pool.pop()[2]


def pool_select(pool: list[PoolEntry], k: int, rng: RandomSource) -> Individual:
    n = len(pool)
    best = pool[rng.randint_below(n)]
    for _ in range(k - 1):
        e = pool[rng.randint_below(n)]
        if e < best:
            best = e
    return best[2]


def make_offspring_pair(
    a: Individual, b: Individual, ops: OperatorConfig, rng: RandomSource
) -> tuple:
    """Crossover coin, two-point crossover, then mutation of both children."""
    if rng.random() < ops.pc:
        g1, g2 = two_point_crossover(a.genome, b.genome, rng)
    else:
        g1, g2 = a.genome, b.genome
    return bitflip_mutation(g1, ops.pm, rng), bitflip_mutation(g2, ops.pm, rng)


# ---------------------------------------------------------------------------
# APGA


class Apga:
    """Steady-state GA with adaptive population size.

    Each generation inserts exactly two offspring and removes members
    whose remaining lifetime (rlt) has reached zero. The current best
    member is exempt from aging, which makes best-so-far fitness
    non-decreasing and keeps the population non-empty. The size obeys
    P(t) = P(t-1) + 2 - D(t) and, for t >= max_lt, never exceeds
    2*max_lt + 1.
    """

    def __init__(
        self,
        problem,
        p0: int,
        operators: OperatorConfig,
        lifetimes: LifetimeConfig,
        rng: RandomSource,
        counter: EvalCounter | None = None,
    ):
        if p0 < 2:
            raise ConfigurationError(f"initial population size must be >= 2, got {p0}")
        self.problem = problem
        self.ops = operators
        self.lt = lifetimes
        self.rng = rng
        self.counter = counter if counter is not None else EvalCounter()
        genomes = [random_genome(problem.length, rng) for _ in range(p0)]
        fits = evaluate_many(genomes, problem, self.counter)
        self.pop: Population = [
            Individual(g, f, birth_order=i) for i, (g, f) in enumerate(zip(genomes, fits))
        ]
        self._births = p0
        self._fits = fits  # aligned with self.pop
        stats = stats_from_fits(fits)
        for ind in self.pop:
            ind.rlt = bilinear_lifetime(ind.fitness, stats, lifetimes)
        self._best = best_of(self.pop)
        self.t = 0

    @property
    def best(self) -> Individual:
        """Fittest member (ties to the oldest); tracked incrementally:
        only a newcomer can dethrone it and the best never dies."""
        return self._best

    def step(self, target: float | None = None) -> tuple[int, int | None]:
        """Advance one generation; returns (deaths, eval index of a target
        hit or None). The step always completes its bookkeeping."""
        pop = self.pop
        size_before = len(pop)
        best = self._best
        rng = self.rng
        k = self.ops.tournament_k
        # members dying this step are still eligible parents
        p1 = tournament_select(pop, k, rng)
        p2 = tournament_select(pop, k, rng)
        g1, g2 = make_offspring_pair(p1, p2, self.ops, rng)
        fits = evaluate_many([g1, g2], self.problem, self.counter)
        hit = _hit_index(fits, target)
        hit_evals = None if hit is None else self.counter.count - (1 - hit)
        # one fused pass: age all but the best, drop the expired
        new_pop: Population = []
        new_fits: list[float] = []
        keep_ind = new_pop.append
        keep_fit = new_fits.append
        deaths = 0
        for ind, fit in zip(pop, self._fits):
            if ind is not best:
                rlt = ind.rlt - 1
                ind.rlt = rlt
                ind.age += 1
                if rlt == 0:
                    deaths += 1
                    continue
            keep_ind(ind)
            keep_fit(fit)
        o1 = Individual(g1, fits[0], self._births)
        o2 = Individual(g2, fits[1], self._births + 1)
        self._births += 2
        new_pop.append(o1)
        new_pop.append(o2)
        new_fits.append(fits[0])
        new_fits.append(fits[1])
        # lifetimes for the newcomers come from the post-removal population
        stats = stats_from_fits(new_fits)
        o1.rlt = bilinear_lifetime(fits[0], stats, self.lt)
        o2.rlt = bilinear_lifetime(fits[1], stats, self.lt)
        if o1.fitness > best.fitness:
            best = o1
        if o2.fitness > best.fitness:
            best = o2
        self._best = best
        self.pop = new_pop
        self._fits = new_fits
        self.t += 1
        if len(new_pop) != size_before + 2 - deaths:
            raise RuntimeError("population bookkeeping broke the size recurrence")
        return deaths, hit_evals

    def run(
        self,
        stop: StopCondition,
        trace: TraceSink | None = None,
        collect_sizes: bool = True,
    ) -> RunRecord:
        counter = self.counter
        sizes = [len(self.pop)] if collect_sizes else None
        deaths_log = [0] if collect_sizes else None
        if trace is not None:
            trace.sample(counter.count, self.t, len(self.pop))
        evals_at = _initial_hit_evals(self.pop, stop.target_fitness)
        if evals_at is not None:
            return RunRecord(
                "apga", True, evals_at, self._best.fitness, "target",
                size_at_success=len(self.pop), sizes=sizes, deaths=deaths_log,
            )
        budget = stop.max_evaluations
        while True:
            if budget is not None and counter.count + 2 > budget:
                termination = "budget"
                break
            deaths, evals_at = self.step(stop.target_fitness)
            if collect_sizes:
                sizes.append(len(self.pop))
                deaths_log.append(deaths)
            if trace is not None:
                trace.sample(counter.count, self.t, len(self.pop))
            if evals_at is not None:
                termination = "target"
                break
        success = termination == "target"
        return RunRecord(
            "apga",
            success,
            evals_at if success else counter.count,
            self._best.fitness,
            termination,
            size_at_success=len(self.pop) if success else None,
            sizes=sizes,
            deaths=deaths_log,
        )


# ---------------------------------------------------------------------------
# GAVaPS


def gavaps_offspring_count(rho: float, size: int) -> int:
    """Number of offspring per generation: round(rho*size) raised to the
    next even number, with a floor of 2 so a crossover pair always exists."""
    n = round_half_away(rho * size)
    if n % 2:
        n += 1
    return max(2, n)


class Gavaps:
    """Generational GA with varying population size.

    No fitness-based parent selection: every member is equally likely to
    reproduce, and selection pressure comes only from fitness-dependent
    lifetimes. The population may die out entirely or grow explosively;
    both are recorded outcomes, not errors.
    """

    def __init__(
        self,
        problem,
        p0: int,
        rho: float,
        operators: OperatorConfig,
        lifetimes: LifetimeConfig,
        rng: RandomSource,
        counter: EvalCounter | None = None,
        size_cap: int = 100_000,
    ):
        if p0 < 2:
            raise ConfigurationError(f"initial population size must be >= 2, got {p0}")
        if not 0.0 < rho <= 1.0:
            raise ConfigurationError(f"reproduction ratio must lie in (0, 1], got {rho}")
        self.problem = problem
        self.rho = rho
        self.ops = operators
        self.lt = lifetimes
        self.rng = rng
        self.counter = counter if counter is not None else EvalCounter()
        self.size_cap = size_cap
        genomes = [random_genome(problem.length, rng) for _ in range(p0)]
        fits = evaluate_many(genomes, problem, self.counter)
        self.pop: Population = [
            Individual(g, f, birth_order=i) for i, (g, f) in enumerate(zip(genomes, fits))
        ]
        self._births = p0
        stats = compute_stats(self.pop)
        for ind in self.pop:
            ind.rlt = bilinear_lifetime(ind.fitness, stats, lifetimes)
        self._last_max_fit = stats.max_fit
        self.t = 0

    def step(self, target: float | None = None) -> tuple[int, int | None]:
        """One generation: age everyone, breed, assign lifetimes, cull."""
        pop = self.pop
        size_before = len(pop)
        for ind in pop:
            ind.age += 1
            ind.rlt -= 1
        rng = self.rng
        n_off = gavaps_offspring_count(self.rho, size_before)
        genomes = []
        for _ in range(n_off // 2):
            pa = pop[rng.randint_below(size_before)]
            pb = pop[rng.randint_below(size_before)]
            g1, g2 = make_offspring_pair(pa, pb, self.ops, rng)
            genomes.append(g1)
            genomes.append(g2)
        fits = evaluate_many(genomes, self.problem, self.counter)
        hit = _hit_index(fits, target)
        hit_evals = None if hit is None else self.counter.count - (len(fits) - 1 - hit)
        newcomers = []
        for g, f in zip(genomes, fits):
            ind = Individual(g, f, self._births)
            self._births += 1
            newcomers.append(ind)
            pop.append(ind)
        stats = compute_stats(pop)  # includes the just-appended offspring
        for ind, f in zip(newcomers, fits):
            ind.rlt = bilinear_lifetime(f, stats, self.lt)
        self._last_max_fit = stats.max_fit
        survivors = [ind for ind in pop if ind.rlt >= 0]
        deaths = len(pop) - len(survivors)
        self.pop = survivors
        self.t += 1
        return deaths, hit_evals

    def run(
        self,
        stop: StopCondition,
        trace: TraceSink | None = None,
        collect_sizes: bool = True,
    ) -> RunRecord:
        counter = self.counter
        sizes = [len(self.pop)] if collect_sizes else None
        if trace is not None:
            trace.sample(counter.count, self.t, len(self.pop))
        evals_at = _initial_hit_evals(self.pop, stop.target_fitness)
        if evals_at is not None:
            return RunRecord(
                "gavaps", True, evals_at, best_of(self.pop).fitness, "target",
                size_at_success=len(self.pop), sizes=sizes,
            )
        budget = stop.max_evaluations
        while True:
            cost = gavaps_offspring_count(self.rho, len(self.pop))
            if budget is not None and counter.count + cost > budget:
                termination = "budget"
                break
            _, evals_at = self.step(stop.target_fitness)
            if collect_sizes:
                sizes.append(len(self.pop))
            if trace is not None:
                trace.sample(counter.count, self.t, len(self.pop))
            if evals_at is not None:
                termination = "target"
                break
            if not self.pop:
                termination = "extinction"
                break
            if len(self.pop) > self.size_cap:
                termination = "explosion"
                break
        success = termination == "target"
        best_fit = best_of(self.pop).fitness if self.pop else self._last_max_fit
        return RunRecord(
            "gavaps",
            success,
            evals_at if success else counter.count,
            best_fit,
            termination,
            size_at_success=len(self.pop) if success else None,
            sizes=sizes,
        )


# ---------------------------------------------------------------------------
# fixed-size steady-state baseline


def tga_run(
    problem,
    n: int,
    operators: OperatorConfig,
    stop: StopCondition,
    rng: RandomSource,
    counter: EvalCounter | None = None,
    trace: TraceSink | None = None,
    collect_sizes: bool = False,
) -> RunRecord:
    """Steady-state GA at a fixed size: each step selects two parents by
    tournament, inserts two evaluated offspring, then deletes the two
    worst members, so the size is constant at n."""
    if n < 2:
        raise ConfigurationError(f"population size must be >= 2, got {n}")
    counter = counter if counter is not None else EvalCounter()
    genomes = [random_genome(problem.length, rng) for _ in range(n)]
    fits = evaluate_many(genomes, problem, counter)
    pop = [Individual(g, f, birth_order=i) for i, (g, f) in enumerate(zip(genomes, fits))]
    births = n
    sizes = [n] if collect_sizes else None
    if trace is not None:
        trace.sample(counter.count, 0, n)
    evals_at = _initial_hit_evals(pop, stop.target_fitness)
    if evals_at is not None:
        return RunRecord(
            "tga", True, evals_at, best_of(pop).fitness, "target",
            size_at_success=n, sizes=sizes,
        )
    pool = pool_from(pop)
    budget = stop.max_evaluations
    t = 0
    k = operators.tournament_k
    termination = None
    while True:
        if budget is not None and counter.count + 2 > budget:
            termination = "budget"
            break
        pa = pool_select(pool, k, rng)
        pb = pool_select(pool, k, rng)
        g1, g2 = make_offspring_pair(pa, pb, operators, rng)
        fits = evaluate_many([g1, g2], problem, counter)
        hit = _hit_index(fits, stop.target_fitness)
        evals_at = None if hit is None else counter.count - (1 - hit)
        pool_insert(pool, Individual(g1, fits[0], births))
        pool_insert(pool, Individual(g2, fits[1], births + 1))
        births += 2
        pool_remove_worst(pool)
        pool_remove_worst(pool)
        t += 1
        if collect_sizes:
            sizes.append(len(pool))
        if trace is not None:
            trace.sample(counter.count, t, len(pool))
        if evals_at is not None:
            termination = "target"
            break
    success = termination == "target"
    return RunRecord(
        "tga",
        success,
        evals_at if success else counter.count,
        -pool[0][0],
        termination,
        size_at_success=n if success else None,
        sizes=sizes,
    )
