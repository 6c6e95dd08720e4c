"""The multi-population engine: schedule, spawning, eliminations, modes.

The schedule oracle below expands the defining recursion directly
(S_0 = [0]; S_i = m copies of S_{i-1} followed by [i]) and is the
independent reference every schedule assertion is checked against.
"""

import math

import pytest

from popsizing import (
    ConfigurationError,
    ConstantProblem,
    EvalCounter,
    Genome,
    Individual,
    LedgerEntry,
    OneMax,
    OperatorConfig,
    ParameterlessGa,
    RandomSource,
    StopCondition,
    TraceSink,
    eliminate_sweep,
    plga_run,
)
from popsizing.algorithms import pool_from
from popsizing.parameterless import is_converged, refresh_avg

OPS = OperatorConfig(pc=0.9, pm=0.05, tournament_k=4)


# -- schedule oracle ---------------------------------------------------------

def demand_sequence(m: int, length: int) -> list[int]:
    """Population indices demanded by the recursive schedule.

    S_inf is the limit of S_i = m * S_{i-1} + [i]; every S_i is a prefix
    of S_{i+1}, so expanding until long enough gives the true prefix.
    """
    seq = [0]
    i = 1
    while len(seq) < length:
        seq = seq * m + [i]
        i += 1
    return seq[:length]


def oracle_actions(m: int, n0: int, count: int) -> list[tuple]:
    """First `count` engine actions: spawns interleaved at first touch."""
    actions: list[tuple] = []
    spawned = 0
    for idx in demand_sequence(m, count):
        if idx == spawned:
            actions.append(("spawn", n0 * (2**idx)))
            spawned += 1
        actions.append(("run", idx))
        if len(actions) >= count:
            break
    return actions[:count]


def drive(engine: ParameterlessGa, count: int) -> list[tuple]:
    """Execute `count` actions, returning them in oracle format."""
    out = []
    for _ in range(count):
        action = engine.next_action()
        if action.kind == "spawn":
            out.append(("spawn", action.size))
        else:
            out.append(("run", action.index))
        engine.execute(action)
    return out


def make_engine(m=2, n0=4, pm=0.05, mode="steady_state", seed=5, problem=None):
    problem = problem if problem is not None else ConstantProblem(16)
    ops = OperatorConfig(pc=0.9, pm=pm, tournament_k=4)
    return ParameterlessGa(
        problem, ops, RandomSource(seed), n0=n0, m=m, mode=mode
    )


class TestSchedule:
    def test_recursion_prefix_is_stable(self):
        # expanding further never rewrites an earlier prefix
        assert demand_sequence(2, 7) == [0, 0, 1, 0, 0, 1, 2]
        assert demand_sequence(2, 15)[:7] == demand_sequence(2, 7)

    def test_fourteen_run_actions_then_spawn_32(self):
        engine = make_engine(m=2)
        actions = drive(engine, 18)
        runs = [a for a in actions if a[0] == "run"]
        sizes = {e.n: e.g for e in engine.entries}
        assert [idx for _, idx in runs] == [0, 0, 1, 0, 0, 1, 2, 0, 0, 1, 0, 0, 1, 2]
        assert actions[-1] == ("spawn", 32)
        assert sizes == {4: 8, 8: 4, 16: 2, 32: 0}

    @pytest.mark.parametrize("m", [2, 4])
    def test_long_prefix_matches_oracle(self, m):
        count = 120
        engine = make_engine(m=m)
        assert drive(engine, count) == oracle_actions(m, 4, count)

    def test_default_preference_runs_smallest_four_times(self):
        engine = make_engine(m=4)
        drive(engine, 60)
        gs = {e.n: e.g for e in engine.entries}
        # the base population must hold a 4:1 generation ratio over the next
        assert gs[4] in range(4 * gs[8], 4 * (gs[8] + 1) + 1)

    def test_sizes_double_on_spawn(self):
        engine = make_engine(m=2)
        drive(engine, 40)
        ns = [e.n for e in engine.entries]
        assert ns == [4 * 2**i for i in range(len(ns))]


class TestScheduleCountInvariant:
    """m*g[i+1] <= g[i] <= m*(g[i+1]+1) for consecutive live pairs.

    Tier 1 asserts the literal invariant with no eliminations and with
    eliminations of the smallest population (the shape real domination
    produces). Tier 2 injects eliminations anywhere, where only the
    windowed form of the quota is guaranteed, and checks generation
    deltas between events instead.
    """

    @staticmethod
    def assert_literal(engine):
        es = engine.entries
        for lo, hi in zip(es, es[1:]):
            assert engine.m * hi.g <= lo.g <= engine.m * (hi.g + 1), (
                f"quota broken: g={lo.g} vs g={hi.g} (m={engine.m})"
            )

    @pytest.mark.parametrize("m", [2, 4])
    def test_pure_schedule(self, m):
        engine = make_engine(m=m)
        for _ in range(1500):
            engine.execute(engine.next_action())
            self.assert_literal(engine)

    @pytest.mark.parametrize("m", [2, 4])
    def test_with_smallest_population_eliminated(self, m):
        # each kill promotes a doubled successor, so the kill count is
        # capped to keep population sizes (and the eval bill) bounded
        engine = make_engine(m=m)
        rng = RandomSource(99)
        kills = 0
        for step in range(1200):
            action = engine.next_action()
            # dooming the smallest is only visible if it does not run
            # (and refresh) in this very action
            if (
                kills < 5
                and len(engine.entries) >= 2
                and rng.random() < 0.02
                and not (action.kind == "run" and action.index == 0)
            ):
                engine.entries[0].avg_fitness = -1.0
                kills += 1
            engine.execute(action)
            self.assert_literal(engine)
        assert kills == 5

    def test_arbitrary_eliminations_keep_windowed_quota(self):
        m = 2
        engine = make_engine(m=m)
        rng = RandomSource(1234)
        snapshot: list[tuple[LedgerEntry, int]] = []
        pairs: list[tuple[LedgerEntry, LedgerEntry]] = []

        def take_snapshot():
            # entry objects are held directly so identity stays valid
            snapshot[:] = [(e, e.g) for e in engine.entries]
            pairs[:] = list(zip(engine.entries, engine.entries[1:]))

        def check_window():
            live = set(map(id, engine.entries))
            base = {id(e): g for e, g in snapshot}
            for a, b in pairs:
                if id(a) in live and id(b) in live:
                    da = a.g - base[id(a)]
                    db = b.g - base[id(b)]
                    assert abs(da - m * db) <= m, (da, db)

        take_snapshot()
        kills = 0
        for step in range(1200):
            action = engine.next_action()
            doomed = None
            if kills < 6 and len(engine.entries) >= 3 and rng.random() < 0.02:
                doomed = rng.randint_below(len(engine.entries) - 1)
                if not (action.kind == "run" and action.index == doomed):
                    engine.entries[doomed].avg_fitness = -1.0
                    kills += 1
                else:
                    doomed = None
            engine.execute(action)
            if doomed is not None or action.kind == "spawn":
                check_window()
                take_snapshot()
        check_window()
        assert kills == 6


class TestSpawn:
    def test_empty_ledger_spawns_base_size(self):
        engine = make_engine()
        action = engine.next_action()
        assert action.kind == "spawn" and action.size == 4
        entry, _ = engine.execute(action)
        assert entry.n == 4 and len(entry.pool) == 4

    def test_spawn_doubles_largest_live(self):
        engine = make_engine(m=2)
        drive(engine, 9)  # through the spawn of 16
        assert [e.n for e in engine.entries] == [4, 8, 16]

    def test_spawn_after_smallest_eliminated(self):
        # {4, 8, 16} minus 4 leaves {8, 16}; next spawn is still 32
        engine = make_engine(m=2)
        # stop where the next action runs population 1, so the doomed
        # average on population 0 survives until the sweep
        drive(engine, 12)
        engine.entries[0].avg_fitness = -1.0
        engine.execute(engine.next_action())
        assert [e.n for e in engine.entries][0] == 8
        while True:
            action = engine.next_action()
            if action.kind == "spawn":
                assert action.size == 32
                break
            engine.execute(action)

    def test_spawn_counts_evaluations(self):
        engine = make_engine(n0=8)
        engine.execute(engine.next_action())
        assert engine.counter.count == 8
        assert engine.entries[0].evals_spent == 8


class TestEliminateSweep:
    @staticmethod
    def entry(n, avg, genomes=None):
        if genomes is None:
            genomes = [Genome(i % 2, 4) for i in range(n)]
        pop = [Individual(g, avg, i) for i, g in enumerate(genomes)]
        e = LedgerEntry(n, pool_from(pop))
        e.avg_fitness = avg
        return e

    def test_dominated_smaller_removed(self):
        entries = [self.entry(4, 0.5), self.entry(8, 0.7)]
        survivors, removed = eliminate_sweep(entries, pm=0.05)
        assert [e.n for e in survivors] == [8]
        assert [(e.n, reason) for e, reason in removed] == [(4, "dominated")]

    def test_ordered_ledger_untouched(self):
        entries = [self.entry(4, 0.9), self.entry(8, 0.7)]
        survivors, removed = eliminate_sweep(entries, pm=0.05)
        assert len(survivors) == 2 and not removed

    def test_equal_averages_are_safe(self):
        entries = [self.entry(4, 0.5), self.entry(8, 0.5)]
        survivors, removed = eliminate_sweep(entries, pm=0.05)
        assert len(survivors) == 2 and not removed

    def test_middle_domination(self):
        entries = [self.entry(4, 0.9), self.entry(8, 0.1), self.entry(16, 0.5)]
        survivors, removed = eliminate_sweep(entries, pm=0.05)
        assert [e.n for e in survivors] == [4, 16]
        assert removed[0][0].n == 8

    def test_converged_removed_only_without_mutation(self):
        same = [Genome(5, 4)] * 4
        entries = [self.entry(4, 0.9, genomes=same), self.entry(8, 0.7)]
        assert is_converged(entries[0])
        survivors, removed = eliminate_sweep(entries, pm=0.0)
        assert [e.n for e in survivors] == [8]
        assert removed[0][1] == "converged"
        survivors, removed = eliminate_sweep(entries, pm=0.05)
        assert len(survivors) == 2 and not removed

    def test_survivor_order_and_counters_kept(self):
        entries = [self.entry(4, 0.8), self.entry(8, 0.2), self.entry(16, 0.6)]
        entries[0].g, entries[2].g = 12, 3
        survivors, _ = eliminate_sweep(entries, pm=0.05)
        assert [e.n for e in survivors] == [4, 16]
        assert [e.g for e in survivors] == [12, 3]


class TestGenerationModes:
    def test_steady_state_costs_n_evaluations(self):
        engine = make_engine(n0=8, problem=OneMax(16))
        engine.execute(engine.next_action())
        before = engine.counter.count
        engine.run_one_generation(0)
        assert engine.counter.count - before == 8
        assert engine.entries[0].g == 1

    def test_generational_costs_n_evaluations(self):
        engine = make_engine(n0=4, mode="generational", problem=OneMax(16))
        engine.execute(engine.next_action())
        before = engine.counter.count
        engine.run_one_generation(0)
        assert engine.counter.count - before == 4
        assert engine.entries[0].g == 1

    def test_odd_size_rounds_up_pairs(self):
        engine = make_engine(n0=5, problem=OneMax(16))
        engine.execute(engine.next_action())
        before = engine.counter.count
        engine.run_one_generation(0)
        # ceil(5/2) = 3 pairs = 6 evaluations, still one generation
        assert engine.counter.count - before == 6
        engine2 = make_engine(n0=5, mode="generational", problem=OneMax(16))
        engine2.execute(engine2.next_action())
        before = engine2.counter.count
        engine2.run_one_generation(0)
        # generational keeps the population size: surplus child dropped
        assert engine2.counter.count - before == 5
        assert len(engine2.entries[0].pool) == 5

    def test_average_is_exact_mean(self):
        engine = make_engine(n0=8, problem=OneMax(16))
        engine.execute(engine.next_action())
        engine.run_one_generation(0)
        entry = engine.entries[0]
        fits = [-e[0] for e in entry.pool]
        assert entry.avg_fitness == math.fsum(fits) / len(fits)

    def test_steady_state_keeps_size(self):
        engine = make_engine(n0=8, problem=OneMax(16))
        engine.execute(engine.next_action())
        for _ in range(5):
            engine.run_one_generation(0)
        assert len(engine.entries[0].pool) == 8

    def test_out_of_range_index(self):
        engine = make_engine()
        with pytest.raises(IndexError):
            engine.run_one_generation(0)

    def test_bad_mode_rejected(self):
        with pytest.raises(ConfigurationError):
            make_engine(mode="island")
        with pytest.raises(ConfigurationError):
            make_engine(m=1)
        with pytest.raises(ConfigurationError):
            make_engine(n0=0)


class TestFullRun:
    def test_solves_small_onemax_in_small_population(self):
        ops = OperatorConfig(pc=0.9, pm=1 / 16, tournament_k=4)
        wins = 0
        tiny_wins = 0
        for seed in range(20):
            rec = plga_run(
                OneMax(16),
                ops,
                StopCondition(target_fitness=16.0, max_evaluations=100_000),
                RandomSource(3000 + seed),
            )
            wins += rec.success
            tiny_wins += rec.success and rec.size_at_success == 4
        assert wins == 20
        assert tiny_wins >= 10

    def test_trace_lines_and_monotone_sizes(self):
        trace = TraceSink()
        ops = OperatorConfig(pc=0.9, pm=1 / 30, tournament_k=4)
        plga_run(
            OneMax(30),
            ops,
            StopCondition(max_evaluations=20_000),
            RandomSource(77),
            trace=trace,
        )
        evals = [row[0] for row in trace.samples]
        mins = [row[1] for row in trace.samples]
        maxs = [row[2] for row in trace.samples]
        assert evals == sorted(evals)
        # with mutation on, eliminations only ever remove dominated
        # smaller populations, so both envelope lines are monotone
        assert mins == sorted(mins)
        assert maxs == sorted(maxs)

    def test_evaluation_accounting(self):
        counter = EvalCounter()
        ops = OperatorConfig(pc=0.9, pm=1 / 20, tournament_k=4)
        rec = plga_run(
            OneMax(20),
            ops,
            StopCondition(max_evaluations=5_000),
            RandomSource(11),
            counter=counter,
        )
        assert counter.count <= 5_000
        spent = sum(r[1] for r in rec.extra["rollups"])
        assert spent == counter.count

    def test_budget_skips_unaffordable_actions(self):
        counter = EvalCounter()
        ops = OperatorConfig(pc=0.9, pm=1 / 20, tournament_k=4)
        rec = plga_run(
            OneMax(20),
            ops,
            StopCondition(max_evaluations=100),
            RandomSource(13),
            counter=counter,
        )
        assert rec.termination == "budget"
        assert counter.count <= 100

    def test_replay_is_identical(self):
        ops = OperatorConfig(pc=0.9, pm=1 / 16, tournament_k=4)
        stop = StopCondition(target_fitness=16.0, max_evaluations=30_000)
        tr_a, tr_b = TraceSink(), TraceSink()
        a = plga_run(OneMax(16), ops, stop, RandomSource(555), trace=tr_a)
        b = plga_run(OneMax(16), ops, stop, RandomSource(555), trace=tr_b)
        assert (a.success, a.evaluations, a.best_fitness, a.size_at_success) == (
            b.success,
            b.evaluations,
            b.best_fitness,
            b.size_at_success,
        )
        assert tr_a.samples == tr_b.samples
        assert tr_a.events == tr_b.events

    def test_best_fitness_is_over_live_populations(self):
        engine = make_engine(problem=OneMax(16), pm=1 / 16)
        rec = engine.run(StopCondition(max_evaluations=2_000))
        live_best = max(-e.pool[0][0] for e in engine.entries)
        assert rec.best_fitness == live_best

    def test_success_reports_population_size(self):
        ops = OperatorConfig(pc=0.9, pm=1 / 12, tournament_k=4)
        rec = plga_run(
            OneMax(12),
            ops,
            StopCondition(target_fitness=12.0, max_evaluations=50_000),
            RandomSource(2),
        )
        assert rec.success
        assert rec.size_at_success in {4 * 2**i for i in range(8)}
        assert rec.evaluations <= 50_000
