"""Multi-population GA that needs no population-size parameter.

An ordered ledger of populations with doubling sizes is advanced by an
m-ary preference schedule: the smallest population runs m generations
for every generation of the next larger one, recursively. When the
schedule's carry walks past the largest population, a new one twice
that size is spawned. Populations proven pointless are eliminated: a
population dies when some strictly larger population has strictly
greater average fitness (and, when mutation is off, when it has fully
converged).

Two inner-GA modes:
  steady_state (default): ceil(N/2) insert-2/delete-worst-2 iterations
      count as ONE schedule generation, so a generation costs ~N
      evaluations in either mode and the preference counter is fair.
  generational: N offspring by tournament replace the generation
      wholesale, no elitism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algorithms import (
    RunRecord,
    StopCondition,
    TraceSink,
    make_offspring_pair,
    pool_from,
    pool_insert,
    pool_remove_worst,
    pool_select,
)
from .core import (
    ConfigurationError,
    EvalCounter,
    Individual,
    RandomSource,
    evaluate_many,
    random_genome,
)
from .operators import OperatorConfig


@dataclass(slots=True)
class LedgerEntry:
    """One population plus its schedule bookkeeping.

    c counts this entry's generations since the entry immediately above
    it last ran; when c reaches m the carry moves upward. Eliminations
    never reset survivors' counters.
    """

    n: int
    pool: list  # sorted (-fitness, birth_order, Individual) entries
    g: int = 0
    c: int = 0
    avg_fitness: float = 0.0
    evals_spent: int = 0
    best_fitness: float = 0.0


@dataclass(frozen=True, slots=True)
class ScheduleAction:
    kind: str  # "run" | "spawn"
    index: int | None = None  # ledger index to run
    size: int | None = None  # size the spawn would create


def refresh_avg(entry: LedgerEntry) -> None:
    entry.avg_fitness = math.fsum(-e[0] for e in entry.pool) / len(entry.pool)


def is_converged(entry: LedgerEntry) -> bool:
    first = entry.pool[0][2].genome.bits
    return all(e[2].genome.bits == first for e in entry.pool)


def eliminate_sweep(
    entries: list[LedgerEntry], pm: float
) -> tuple[list[LedgerEntry], list[tuple[LedgerEntry, str]]]:
    """Drop every population strictly dominated by a strictly larger one
    (greater average fitness), plus converged populations when pm == 0.
    Returns (survivors, [(entry, reason), ...]); survivor order kept."""
    survivors: list[LedgerEntry] = []
    removed: list[tuple[LedgerEntry, str]] = []
    # entries are ascending in size, so a suffix max of avg_fitness gives
    # the best average among strictly larger populations
    best_above = float("-inf")
    dominated = [False] * len(entries)
    for i in range(len(entries) - 1, -1, -1):
        dominated[i] = best_above > entries[i].avg_fitness
        if entries[i].avg_fitness > best_above:
            best_above = entries[i].avg_fitness
    for entry, dead in zip(entries, dominated):
        if dead:
            removed.append((entry, "dominated"))
        elif pm == 0.0 and is_converged(entry):
            removed.append((entry, "converged"))
        else:
            survivors.append(entry)
    return survivors, removed


class ParameterlessGa:
    """Stateful engine; one instance per run. See module docstring."""

    def __init__(
        self,
        problem,
        operators: OperatorConfig,
        rng: RandomSource,
        counter: EvalCounter | None = None,
        n0: int = 4,
        m: int = 4,
        mode: str = "steady_state",
    ):
        if n0 < 1:
            raise ConfigurationError(f"base population size must be >= 1, got {n0}")
        if m < 2:
            raise ConfigurationError(f"schedule preference must be >= 2, got {m}")
        if mode not in ("steady_state", "generational"):
            raise ConfigurationError(f"unknown inner-GA mode: {mode!r}")
        self.problem = problem
        self.ops = operators
        self.rng = rng
        self.counter = counter if counter is not None else EvalCounter()
        self.n0 = n0
        self.m = m
        self.mode = mode
        self.entries: list[LedgerEntry] = []
        self.cursor = 0  # ledger index the schedule touches next
        self.rollups: list[LedgerEntry] = []  # every entry ever spawned
        self._births = 0

    # -- schedule -----------------------------------------------------

    def next_action(self) -> ScheduleAction:
        if self.cursor >= len(self.entries):
            size = self.n0 if not self.entries else 2 * self.entries[-1].n
            return ScheduleAction("spawn", size=size)
        return ScheduleAction("run", index=self.cursor)

    def _advance_cursor(self, ran: LedgerEntry) -> None:
        """Move the cursor after `ran` finished a generation and the
        elimination sweep ran. Carry rule: after this entry's m-th run
        since its upstairs neighbor last ran, that neighbor runs next;
        otherwise the schedule returns to the smallest population. The
        neighbor is found by size in the post-sweep ledger."""
        if ran.c >= self.m:
            ran.c = 0
            lo, hi = 0, len(self.entries)
            while lo < hi:
                mid = (lo + hi) // 2
                if self.entries[mid].n <= ran.n:
                    lo = mid + 1
                else:
                    hi = mid
            self.cursor = lo
        else:
            self.cursor = 0

    # -- actions ------------------------------------------------------

    def spawn_population(self, target: float | None = None) -> tuple[LedgerEntry, int | None]:
        n = self.n0 if not self.entries else 2 * self.entries[-1].n
        genomes = [random_genome(self.problem.length, self.rng) for _ in range(n)]
        fits = evaluate_many(genomes, self.problem, self.counter)
        hit = _first_hit(fits, target)
        evals_at = None if hit is None else self.counter.count - (len(fits) - 1 - hit)
        pop = [
            Individual(g, f, self._births + i) for i, (g, f) in enumerate(zip(genomes, fits))
        ]
        self._births += n
        entry = LedgerEntry(n, pool_from(pop), evals_spent=n, best_fitness=max(fits))
        refresh_avg(entry)
        self.entries.append(entry)
        self.rollups.append(entry)
        return entry, evals_at

    def run_one_generation(self, index: int, target: float | None = None) -> int | None:
        if not 0 <= index < len(self.entries):
            raise IndexError(f"no ledger entry at index {index}")
        entry = self.entries[index]
        evals_before = self.counter.count
        if self.mode == "steady_state":
            evals_at = self._steady_generation(entry, target)
        else:
            evals_at = self._generational_generation(entry, target)
        entry.evals_spent += self.counter.count - evals_before
        entry.best_fitness = max(entry.best_fitness, -entry.pool[0][0])
        refresh_avg(entry)
        entry.g += 1
        entry.c += 1
        return evals_at

    def _steady_generation(self, entry: LedgerEntry, target: float | None) -> int | None:
        pool = entry.pool
        k = self.ops.tournament_k
        for _ in range((entry.n + 1) // 2):
            pa = pool_select(pool, k, self.rng)
            pb = pool_select(pool, k, self.rng)
            g1, g2 = make_offspring_pair(pa, pb, self.ops, self.rng)
            fits = evaluate_many([g1, g2], self.problem, self.counter)
            hit = _first_hit(fits, target)
            pool_insert(pool, Individual(g1, fits[0], self._births))
            pool_insert(pool, Individual(g2, fits[1], self._births + 1))
            self._births += 2
            pool_remove_worst(pool)
            pool_remove_worst(pool)
            if hit is not None:
                return self.counter.count - (1 - hit)
        return None

    def _generational_generation(self, entry: LedgerEntry, target: float | None) -> int | None:
        pool = entry.pool
        k = self.ops.tournament_k
        genomes = []
        for _ in range((entry.n + 1) // 2):
            pa = pool_select(pool, k, self.rng)
            pb = pool_select(pool, k, self.rng)
            g1, g2 = make_offspring_pair(pa, pb, self.ops, self.rng)
            genomes.append(g1)
            genomes.append(g2)
        del genomes[entry.n :]  # odd n: drop the surplus child
        fits = evaluate_many(genomes, self.problem, self.counter)
        hit = _first_hit(fits, target)
        evals_at = None if hit is None else self.counter.count - (len(fits) - 1 - hit)
        pop = [
            Individual(g, f, self._births + i) for i, (g, f) in enumerate(zip(genomes, fits))
        ]
        self._births += len(pop)
        entry.pool = pool_from(pop)
        return evals_at

    def sweep(self, trace: TraceSink | None = None) -> None:
        self.entries, removed = eliminate_sweep(self.entries, self.ops.pm)
        if trace is not None:
            for entry, reason in removed:
                trace.event("eliminate", entry.n, reason)

    def execute(
        self,
        action: ScheduleAction,
        target: float | None = None,
        trace: TraceSink | None = None,
    ) -> tuple[LedgerEntry, int | None]:
        """Perform one schedule action (spawn or run), sweep, and move
        the cursor. Returns (entry acted on, eval index of a target hit
        or None)."""
        if action.kind == "spawn":
            entry, evals_at = self.spawn_population(target)
            if trace is not None:
                trace.event("spawn", entry.n)
            self.sweep(trace)
        else:
            entry = self.entries[action.index]
            evals_at = self.run_one_generation(action.index, target)
            self.sweep(trace)
            self._advance_cursor(entry)
        return entry, evals_at

    # -- full run -----------------------------------------------------

    def _action_cost(self, action: ScheduleAction) -> int:
        if action.kind == "spawn":
            return action.size
        n = self.entries[action.index].n
        return 2 * ((n + 1) // 2) if self.mode == "steady_state" else n

    def run(self, stop: StopCondition, trace: TraceSink | None = None) -> RunRecord:
        budget = stop.max_evaluations
        target = stop.target_fitness
        termination = None
        success_size = None
        evals_at = None
        while True:
            action = self.next_action()
            if budget is not None and self.counter.count + self._action_cost(action) > budget:
                termination = "budget"
                break
            entry, evals_at = self.execute(action, target, trace)
            if trace is not None and self.entries:
                trace.sample(
                    self.counter.count, self.entries[0].n, self.entries[-1].n
                )
            if evals_at is not None:
                termination = "target"
                success_size = entry.n
                break
        success = termination == "target"
        best = max((-e.pool[0][0] for e in self.entries), default=0.0)
        return RunRecord(
            "parameterless",
            success,
            evals_at if success else self.counter.count,
            best,
            termination,
            size_at_success=success_size,
            extra={
                "rollups": [
                    (r.n, r.evals_spent, r.best_fitness, r.g) for r in self.rollups
                ],
                "live_sizes": [e.n for e in self.entries],
            },
        )


def _first_hit(fits: list[float], target: float | None) -> int | None:
    if target is None:
        return None
    for i, f in enumerate(fits):
        if f >= target:
            return i
    return None


def plga_run(
    problem,
    operators: OperatorConfig,
    stop: StopCondition,
    rng: RandomSource,
    counter: EvalCounter | None = None,
    trace: TraceSink | None = None,
    n0: int = 4,
    m: int = 4,
    mode: str = "steady_state",
) -> RunRecord:
    engine = ParameterlessGa(
        problem, operators, rng, counter=counter, n0=n0, m=m, mode=mode
    )
    return engine.run(stop, trace)
