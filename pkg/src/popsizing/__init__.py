"""Benchmark library for genetic algorithms that size their population
on the fly, with a fixed-size baseline and two tunable problem
generators (multimodal random-peak landscapes, concatenated deceptive
traps)."""

from .algorithms import (
    Apga,
    Gavaps,
    RunRecord,
    StopCondition,
    TraceSink,
    gavaps_offspring_count,
    tga_run,
)
from .core import (
    ConfigurationError,
    EvalCounter,
    Genome,
    Individual,
    Population,
    RandomSource,
    best_of,
    derive_run_seed,
    evaluate,
    evaluate_many,
    random_genome,
    round_half_away,
)
from .harness import (
    ExperimentConfig,
    MetricsSummary,
    build_problem,
    emit_csv,
    emit_trace,
    load_config,
    run_experiment,
    run_single,
    run_verify,
)
from .lifetime import FitStats, LifetimeConfig, bilinear_lifetime, compute_stats
from .operators import (
    OperatorConfig,
    bitflip_mutation,
    remove_worst,
    tournament_select,
    two_point_crossover,
)
from .parameterless import (
    LedgerEntry,
    ParameterlessGa,
    ScheduleAction,
    eliminate_sweep,
    plga_run,
)
from .problems import (
    ConcatTrap,
    ConstantProblem,
    MultimodalLandscape,
    OneMax,
    generate_multimodal,
    linear_heights,
    load_instance,
    save_instance,
    trap_block,
)

__all__ = [
    "Apga",
    "ConcatTrap",
    "ConfigurationError",
    "ConstantProblem",
    "EvalCounter",
    "ExperimentConfig",
    "FitStats",
    "Gavaps",
    "Genome",
    "Individual",
    "LedgerEntry",
    "LifetimeConfig",
    "MetricsSummary",
    "MultimodalLandscape",
    "OneMax",
    "OperatorConfig",
    "ParameterlessGa",
    "Population",
    "RandomSource",
    "RunRecord",
    "ScheduleAction",
    "StopCondition",
    "TraceSink",
    "best_of",
    "bilinear_lifetime",
    "bitflip_mutation",
    "build_problem",
    "compute_stats",
    "derive_run_seed",
    "eliminate_sweep",
    "emit_csv",
    "emit_trace",
    "evaluate",
    "evaluate_many",
    "gavaps_offspring_count",
    "generate_multimodal",
    "linear_heights",
    "load_config",
    "load_instance",
    "plga_run",
    "random_genome",
    "remove_worst",
    "round_half_away",
    "run_experiment",
    "run_single",
    "run_verify",
    "save_instance",
    "tga_run",
    "tournament_select",
    "trap_block",
    "two_point_crossover",
]
