"""Experiment orchestration: configuration, seeded replication, metric
aggregation (SR/MBF/AES/APS), CSV/trace emission, and the built-in
verification suite behind the `verify` CLI command.

Config files are flat INI-style key = value under section headers; CLI
flags override file values key by key. Every effective setting,
including defaults, is echoed into output metadata, and a short hash of
that metadata is written to each output file so results stay traceable
to the exact configuration. Two invocations with the same config and
master seed produce byte-identical files.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import math
import os
import tempfile
from dataclasses import dataclass, field, replace
from itertools import product

from .algorithms import Apga, Gavaps, RunRecord, StopCondition, TraceSink, tga_run
from .core import ConfigurationError, EvalCounter, RandomSource, derive_run_seed
from .lifetime import LifetimeConfig
from .operators import OperatorConfig
from .parameterless import LedgerEntry, ParameterlessGa, eliminate_sweep, plga_run
from .problems import (
    ConcatTrap,
    ConstantProblem,
    OneMax,
    generate_multimodal,
    load_instance,
)

ALGORITHMS = ("apga", "gavaps", "tga", "parameterless")
FAMILIES = ("onemax", "multimodal", "trap", "constant")
OUT_DIR_ENV = "POPSIZING_OUT_DIR"


@dataclass(frozen=True)
class ExperimentConfig:
    """Every effective setting of one experiment (defaults filled in)."""

    algorithm: str = "apga"
    runs: int = 100
    max_evals: int = 1_000_000
    target: str = "optimum"  # "optimum" | "none" | float literal
    master_seed: int = 1
    trace: bool = False
    out: str | None = None
    trace_out: str | None = None
    # problem
    family: str = "multimodal"
    length: int | None = None
    peaks: tuple[int, ...] = (50,)
    scheme: str = "equal"
    h_min: float = 0.5
    instance_seed: int | None = None
    instance_file: str | None = None
    blocks: int = 20
    block_size: int = 4
    signal: float = 0.25
    value: float = 0.5
    # operators
    pc: float = 0.9
    pm: float | None = None  # None -> 1/L at run time
    tournament_k: int | None = None  # None -> 4 for parameterless, else 2
    # lifetimes (apga, gavaps)
    min_lt: int = 1
    max_lt: int = 11
    # engine-specific
    p0: int = 60
    rho: float = 0.4
    size_cap: int = 100_000
    n: int = 100
    n0: int = 4
    m: int = 4
    mode: str = "steady_state"

    def effective_length(self) -> int:
        if self.family == "trap":
            derived = self.blocks * self.block_size
            if self.length is not None and self.length != derived:
                raise ConfigurationError(
                    f"problem.length ({self.length}) contradicts "
                    f"blocks*block_size ({derived})"
                )
            return derived
        return self.length if self.length is not None else 100

    def effective_tournament_k(self) -> int:
        if self.tournament_k is not None:
            return self.tournament_k
        return 4 if self.algorithm == "parameterless" else 2

    def variants(self) -> list["ExperimentConfig"]:
        """One config per peak count for generated multimodal problems;
        otherwise the config itself."""
        if self.family == "multimodal" and self.instance_file is None and len(self.peaks) > 1:
            return [replace(self, peaks=(p,)) for p in self.peaks]
        return [self]


# -- config parsing ---------------------------------------------------

_BOOL_STATES = {
    "1": True, "yes": True, "true": True, "on": True,
    "0": False, "no": False, "false": False, "off": False,
}

# (section, key) -> (config field, parser)
_SCHEMA: dict[tuple[str, str], tuple[str, str]] = {
    ("experiment", "algorithm"): ("algorithm", "str"),
    ("experiment", "runs"): ("runs", "int"),
    ("experiment", "max_evals"): ("max_evals", "int"),
    ("experiment", "target"): ("target", "str"),
    ("experiment", "seed"): ("master_seed", "int"),
    ("experiment", "trace"): ("trace", "bool"),
    ("experiment", "out"): ("out", "str"),
    ("experiment", "trace_out"): ("trace_out", "str"),
    ("problem", "family"): ("family", "str"),
    ("problem", "length"): ("length", "int"),
    ("problem", "peaks"): ("peaks", "int_list"),
    ("problem", "scheme"): ("scheme", "str"),
    ("problem", "h_min"): ("h_min", "float"),
    ("problem", "instance_seed"): ("instance_seed", "int"),
    ("problem", "instance_file"): ("instance_file", "str"),
    ("problem", "blocks"): ("blocks", "int"),
    ("problem", "block_size"): ("block_size", "int"),
    ("problem", "signal"): ("signal", "float"),
    ("problem", "value"): ("value", "float"),
    ("operators", "pc"): ("pc", "float"),
    ("operators", "pm"): ("pm", "float"),
    ("operators", "tournament_k"): ("tournament_k", "int"),
    ("lifetime", "min_lt"): ("min_lt", "int"),
    ("lifetime", "max_lt"): ("max_lt", "int"),
    ("apga", "p0"): ("p0", "int"),
    ("gavaps", "p0"): ("p0", "int"),
    ("gavaps", "rho"): ("rho", "float"),
    ("gavaps", "size_cap"): ("size_cap", "int"),
    ("tga", "n"): ("n", "int"),
    ("parameterless", "n0"): ("n0", "int"),
    ("parameterless", "m"): ("m", "int"),
    ("parameterless", "mode"): ("mode", "str"),
}

_SECTIONS = {section for section, _ in _SCHEMA}


def _parse_value(kind: str, raw: str, where: str):
    raw = raw.strip()
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            return _BOOL_STATES[raw.lower()]
        if kind == "int_list":
            return tuple(int(part.strip()) for part in raw.split(","))
    except (ValueError, KeyError):
        raise ConfigurationError(f"cannot parse {where} = {raw!r} as {kind}") from None
    return raw


def load_config(
    path: str | None = None, overrides: dict[str, str] | None = None
) -> ExperimentConfig:
    """Build a validated config from an INI file and/or CLI overrides.

    `overrides` maps "section.key" to raw string values and wins over
    the file. Unknown sections or keys are rejected by name.
    """
    values: dict[str, object] = {}

    def absorb(section: str, key: str, raw: str) -> None:
        section = section.strip().lower()
        key = key.strip().lower()
        if section not in _SECTIONS:
            raise ConfigurationError(f"unknown config section [{section}]")
        if (section, key) not in _SCHEMA:
            raise ConfigurationError(f"unknown config key {section}.{key}")
        fieldname, kind = _SCHEMA[(section, key)]
        values[fieldname] = _parse_value(kind, raw, f"{section}.{key}")

    if path is not None:
        parser = configparser.ConfigParser(interpolation=None)
        try:
            with open(path, encoding="utf-8") as f:
                parser.read_file(f)
        except OSError as e:
            raise ConfigurationError(f"cannot read config file {path}: {e}") from None
        except configparser.Error as e:
            raise ConfigurationError(f"malformed config file {path}: {e}") from None
        for section in parser.sections():
            for key, raw in parser.items(section):
                absorb(section, key, raw)
    if overrides:
        for dotted, raw in overrides.items():
            section, _, key = dotted.partition(".")
            absorb(section, key, raw)

    cfg = ExperimentConfig(**values)
    _validate(cfg)
    return cfg


def derive_variant(cfg: ExperimentConfig, **changes) -> ExperimentConfig:
    """A copy of cfg with fields changed, re-validated."""
    new = replace(cfg, **changes)
    _validate(new)
    return new


def _validate(cfg: ExperimentConfig) -> None:
    def need(cond: bool, message: str) -> None:
        if not cond:
            raise ConfigurationError(message)

    need(cfg.algorithm in ALGORITHMS,
         f"experiment.algorithm must be one of {ALGORITHMS}, got {cfg.algorithm!r}")
    need(cfg.family in FAMILIES,
         f"problem.family must be one of {FAMILIES}, got {cfg.family!r}")
    need(cfg.runs >= 1, f"experiment.runs must be >= 1, got {cfg.runs}")
    need(cfg.max_evals >= 1, f"experiment.max_evals must be >= 1, got {cfg.max_evals}")
    need(cfg.master_seed >= 0, f"experiment.seed must be >= 0, got {cfg.master_seed}")
    if cfg.target not in ("optimum", "none"):
        _parse_value("float", cfg.target, "experiment.target")
    need(all(p >= 1 for p in cfg.peaks), f"problem.peaks must be >= 1, got {cfg.peaks}")
    need(cfg.scheme in ("equal", "linear"),
         f"problem.scheme must be 'equal' or 'linear', got {cfg.scheme!r}")
    need(0.0 < cfg.h_min <= 1.0, f"problem.h_min must lie in (0, 1], got {cfg.h_min}")
    need(cfg.blocks >= 1, f"problem.blocks must be >= 1, got {cfg.blocks}")
    need(cfg.block_size >= 2, f"problem.block_size must be >= 2, got {cfg.block_size}")
    need(0.0 < cfg.signal < 1.0, f"problem.signal must lie in (0, 1), got {cfg.signal}")
    if cfg.length is not None:
        need(cfg.length >= 1, f"problem.length must be >= 1, got {cfg.length}")
    cfg.effective_length()
    need(0.0 <= cfg.pc <= 1.0, f"operators.pc must lie in [0, 1], got {cfg.pc}")
    if cfg.pm is not None:
        need(0.0 <= cfg.pm <= 1.0, f"operators.pm must lie in [0, 1], got {cfg.pm}")
    if cfg.tournament_k is not None:
        need(cfg.tournament_k >= 1,
             f"operators.tournament_k must be >= 1, got {cfg.tournament_k}")
    need(cfg.min_lt >= 1, f"lifetime.min_lt must be >= 1, got {cfg.min_lt}")
    need(cfg.max_lt >= cfg.min_lt,
         f"lifetime.max_lt ({cfg.max_lt}) must be >= lifetime.min_lt ({cfg.min_lt})")
    need(cfg.p0 >= 2, f"p0 must be >= 2, got {cfg.p0}")
    need(0.0 < cfg.rho <= 1.0, f"gavaps.rho must lie in (0, 1], got {cfg.rho}")
    need(cfg.size_cap >= 1, f"gavaps.size_cap must be >= 1, got {cfg.size_cap}")
    need(cfg.n >= 2, f"tga.n must be >= 2, got {cfg.n}")
    need(cfg.n0 >= 1, f"parameterless.n0 must be >= 1, got {cfg.n0}")
    need(cfg.m >= 2, f"parameterless.m must be >= 2, got {cfg.m}")
    need(cfg.mode in ("steady_state", "generational"),
         f"parameterless.mode must be 'steady_state' or 'generational', got {cfg.mode!r}")


# -- problem construction and metadata --------------------------------

def build_problem(cfg: ExperimentConfig):
    length = cfg.effective_length()
    if cfg.family == "onemax":
        return OneMax(length)
    if cfg.family == "constant":
        return ConstantProblem(length, cfg.value)
    if cfg.family == "trap":
        return ConcatTrap(cfg.blocks, cfg.block_size, cfg.signal)
    if cfg.instance_file is not None:
        try:
            return load_instance(cfg.instance_file)
        except OSError as e:
            raise ConfigurationError(
                f"cannot read instance file {cfg.instance_file}: {e}"
            ) from None
    seed = cfg.instance_seed if cfg.instance_seed is not None else cfg.master_seed
    peaks = cfg.peaks[0]
    return generate_multimodal(
        peaks, length, RandomSource(derive_run_seed(seed, peaks)), cfg.scheme, cfg.h_min
    )


def resolve_target(cfg: ExperimentConfig, problem) -> float | None:
    if cfg.target == "optimum":
        return problem.optimum
    if cfg.target == "none":
        return None
    return float(cfg.target)


def describe_experiment(cfg: ExperimentConfig, problem) -> dict[str, object]:
    """Every effective setting, defaults included, in a fixed key order."""
    target = resolve_target(cfg, problem)
    meta: dict[str, object] = {
        "algorithm": cfg.algorithm,
        "problem": problem.describe(),
    }
    if cfg.family == "multimodal":
        if cfg.instance_file is not None:
            meta["instance_file"] = cfg.instance_file
        else:
            meta["instance_seed"] = (
                cfg.instance_seed if cfg.instance_seed is not None else cfg.master_seed
            )
    meta["pc"] = cfg.pc
    meta["pm"] = cfg.pm if cfg.pm is not None else 1.0 / problem.length
    meta["tournament_k"] = cfg.effective_tournament_k()
    if cfg.algorithm in ("apga", "gavaps"):
        meta["min_lt"] = cfg.min_lt
        meta["max_lt"] = cfg.max_lt
        meta["p0"] = cfg.p0
    if cfg.algorithm == "gavaps":
        meta["rho"] = cfg.rho
        meta["size_cap"] = cfg.size_cap
    if cfg.algorithm == "tga":
        meta["n"] = cfg.n
    if cfg.algorithm == "parameterless":
        meta["n0"] = cfg.n0
        meta["m"] = cfg.m
        meta["mode"] = cfg.mode
    meta["runs"] = cfg.runs
    meta["max_evals"] = cfg.max_evals
    meta["target"] = "none" if target is None else target
    meta["seed"] = cfg.master_seed
    meta["prng_id"] = RandomSource.algorithm_id
    return meta


def config_hash(meta: dict[str, object]) -> str:
    canon = ";".join(f"{k}={v!r}" for k, v in meta.items())
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


# -- running experiments ----------------------------------------------

@dataclass
class MetricsSummary:
    """Aggregates over one experiment's independent runs. aes/aps are
    None exactly when no run succeeded."""

    algorithm: str
    problem_label: str
    runs: int
    sr: float
    mbf: float
    aes: float | None
    aps: float | None
    master_seed: int
    prng_id: str
    config_hash: str
    meta: dict[str, object] = field(default_factory=dict)
    records: list[RunRecord] = field(default_factory=list)
    trace: TraceSink | None = None


def run_single(
    cfg: ExperimentConfig,
    problem,
    target: float | None,
    run_index: int,
    trace: TraceSink | None = None,
    collect_sizes: bool = False,
) -> RunRecord:
    """One independent run with its deterministically derived seed."""
    rng = RandomSource(derive_run_seed(cfg.master_seed, run_index))
    counter = EvalCounter()
    pm = cfg.pm if cfg.pm is not None else 1.0 / problem.length
    ops = OperatorConfig(cfg.pc, pm, cfg.effective_tournament_k())
    stop = StopCondition(target_fitness=target, max_evaluations=cfg.max_evals)
    if cfg.algorithm == "apga":
        engine = Apga(problem, cfg.p0, ops, LifetimeConfig(cfg.min_lt, cfg.max_lt),
                      rng, counter)
        return engine.run(stop, trace, collect_sizes=collect_sizes)
    if cfg.algorithm == "gavaps":
        engine = Gavaps(problem, cfg.p0, cfg.rho, ops,
                        LifetimeConfig(cfg.min_lt, cfg.max_lt), rng, counter,
                        size_cap=cfg.size_cap)
        return engine.run(stop, trace, collect_sizes=collect_sizes)
    if cfg.algorithm == "tga":
        return tga_run(problem, cfg.n, ops, stop, rng, counter, trace,
                       collect_sizes=collect_sizes)
    return plga_run(problem, ops, stop, rng, counter, trace,
                    n0=cfg.n0, m=cfg.m, mode=cfg.mode)


def run_experiment(cfg: ExperimentConfig) -> MetricsSummary:
    """Execute cfg.runs independent runs and aggregate the metrics.

    Aggregation folds in run-index order so results are reproducible.
    When cfg.trace is set, the first run's trace is kept on the summary.
    """
    problem = build_problem(cfg)
    target = resolve_target(cfg, problem)
    meta = describe_experiment(cfg, problem)
    records: list[RunRecord] = []
    first_trace: TraceSink | None = TraceSink() if cfg.trace else None
    for r in range(cfg.runs):
        sink = first_trace if r == 0 else None
        records.append(run_single(cfg, problem, target, r, trace=sink))
    successes = [rec for rec in records if rec.success]
    sr = len(successes) / cfg.runs
    mbf = math.fsum(rec.best_fitness for rec in records) / cfg.runs
    aes = (
        math.fsum(rec.evaluations for rec in successes) / len(successes)
        if successes else None
    )
    aps = (
        math.fsum(rec.size_at_success for rec in successes) / len(successes)
        if successes else None
    )
    return MetricsSummary(
        algorithm=cfg.algorithm,
        problem_label=problem.describe(),
        runs=cfg.runs,
        sr=sr,
        mbf=mbf,
        aes=aes,
        aps=aps,
        master_seed=cfg.master_seed,
        prng_id=RandomSource.algorithm_id,
        config_hash=config_hash(meta),
        meta=meta,
        records=records,
        trace=first_trace,
    )


# -- output -----------------------------------------------------------

CSV_HEADER = ["algorithm", "problem", "runs", "sr", "mbf", "aes", "aps",
              "seed", "prng_id", "config_hash"]


def _fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit_csv(summaries: list[MetricsSummary], path: str) -> None:
    """Write one summary row per experiment; UTF-8, LF line endings."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for s in summaries:
                writer.writerow([
                    s.algorithm, s.problem_label, s.runs, _fmt(s.sr), _fmt(s.mbf),
                    _fmt(s.aes), _fmt(s.aps), s.master_seed, s.prng_id, s.config_hash,
                ])
    except OSError as e:
        raise ConfigurationError(f"cannot write {path}: {e}") from None


def emit_trace(trace: TraceSink, path: str, algorithm: str,
               meta: dict[str, object]) -> None:
    """Write sampled size dynamics of one run. Single-population engines
    log (evaluations, generation, population_size); the multi-population
    scheme logs (evaluations, min_size, max_size). A leading comment
    line carries the full effective configuration."""
    header = (
        ["evaluations", "min_size", "max_size"]
        if algorithm == "parameterless"
        else ["evaluations", "generation", "population_size"]
    )
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write("# " + " ".join(f"{k}={v}" for k, v in meta.items())
                    + f" config_hash={config_hash(meta)}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in trace.samples:
                writer.writerow(row)
    except OSError as e:
        raise ConfigurationError(f"cannot write {path}: {e}") from None


def resolve_out_path(explicit: str | None, default_name: str) -> str:
    if explicit is not None:
        return explicit
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), default_name)


# -- built-in verification suite ---------------------------------------

def audit_size_recurrence(record: RunRecord) -> list[str]:
    """Check size(t) = size(t-1) + 2 - deaths(t) for every step of an
    adaptive steady-state run; exact, no tolerance."""
    problems = []
    sizes, deaths = record.sizes, record.deaths
    for t in range(1, len(sizes)):
        if sizes[t] != sizes[t - 1] + 2 - deaths[t]:
            problems.append(
                f"step {t}: size {sizes[t]} != {sizes[t-1]} + 2 - {deaths[t]}"
            )
    return problems


def check_size_bounds(seeds: int = 20) -> list[str]:
    """Adaptive steady-state size bound: for every sampled generation
    t >= max_lt the population holds at most 2*max_lt + 1 members,
    across a grid of initial sizes, lifetime ranges, and problems.
    Also audits the size recurrence on every run."""
    problems = [
        OneMax(100),
        generate_multimodal(50, 100, RandomSource(7)),
        ConcatTrap(5, 4, 0.25),
    ]
    violations: list[str] = []
    grid = list(product(problems, (4, 20, 60, 1000),
                        ((1, 7), (1, 11), (1, 1000), (100, 100))))
    for idx, (problem, p0, (lo, hi)) in enumerate(grid):
        ops = OperatorConfig(0.9, 1.0 / problem.length, 2)
        lt = LifetimeConfig(lo, hi)
        for s in range(seeds):
            rng = RandomSource(derive_run_seed(1000 + idx, s))
            engine = Apga(problem, p0, ops, lt, rng)
            stop = StopCondition(max_evaluations=p0 + 2 * (hi + 30))
            record = engine.run(stop, collect_sizes=True)
            label = f"{problem.describe()} p0={p0} lt=({lo},{hi}) seed={s}"
            bound = 2 * hi + 1
            for t in range(hi, len(record.sizes)):
                if record.sizes[t] > bound:
                    violations.append(
                        f"{label}: size {record.sizes[t]} > {bound} at generation {t}"
                    )
            violations.extend(f"{label}: {v}" for v in audit_size_recurrence(record))
    return violations


def check_fixed_lifetime_drop(seeds: int = 20) -> list[str]:
    """With min_lt = max_lt = 100 and p0 = 60 every member lives exactly
    100 generations, so the size climbs 60 + 2t and collapses at t=100
    to 200 or 201 (the one age-exempt member may or may not align with
    the initial cohort's expiry)."""
    violations: list[str] = []
    problem = OneMax(50)
    ops = OperatorConfig(0.9, 1.0 / problem.length, 2)
    lt = LifetimeConfig(100, 100)
    for s in range(seeds):
        rng = RandomSource(derive_run_seed(2000, s))
        engine = Apga(problem, 60, ops, lt, rng)
        record = engine.run(StopCondition(max_evaluations=60 + 2 * 105),
                            collect_sizes=True)
        sizes = record.sizes
        for t in range(100):
            if sizes[t] != 60 + 2 * t:
                violations.append(f"seed {s}: size({t}) = {sizes[t]}, expected {60 + 2*t}")
        if sizes[100] not in (200, 201):
            violations.append(f"seed {s}: size(100) = {sizes[100]}, expected 200 or 201")
    return violations


def check_schedule_fidelity() -> list[str]:
    """With preference m=2 and no eliminations possible (constant
    fitness), the first 18 schedule actions must be exactly: spawn 4,
    2 runs of 4, spawn 8, run 8, (4,4,8) twice more with spawn 16 and
    its run interleaved, then spawn 32; sizes doubling, smaller
    populations running twice per run of the next larger."""
    problem = ConstantProblem(16)
    ops = OperatorConfig(0.9, 1.0 / 16.0, 4)
    engine = ParameterlessGa(problem, ops, RandomSource(5), m=2)
    actions: list[tuple[str, int]] = []
    for _ in range(18):
        action = engine.next_action()
        size = action.size if action.kind == "spawn" else engine.entries[action.index].n
        actions.append((action.kind, size))
        engine.execute(action)
    expected = [
        ("spawn", 4), ("run", 4), ("run", 4),
        ("spawn", 8), ("run", 8),
        ("run", 4), ("run", 4), ("run", 8),
        ("spawn", 16), ("run", 16),
        ("run", 4), ("run", 4), ("run", 8),
        ("run", 4), ("run", 4), ("run", 8),
        ("run", 16),
        ("spawn", 32),
    ]
    if actions != expected:
        return [f"schedule mismatch:\n  got      {actions}\n  expected {expected}"]
    return []


def check_elimination_ordering(scenarios: int = 10_000) -> list[str]:
    """Randomized ledgers: after a sweep no surviving population may be
    dominated (a strictly larger one with strictly greater average), and
    only dominated populations may have been removed. Survivor order and
    generation counts are preserved."""
    rng = RandomSource(42)
    violations: list[str] = []
    for case in range(scenarios):
        count = 1 + rng.randint_below(8)
        entries = []
        for i in range(count):
            avg = rng.random()
            if rng.random() < 0.3:
                avg = round(avg, 1)  # inject ties
            entries.append(LedgerEntry(n=4 << i, pool=[], g=rng.randint_below(50),
                                       avg_fitness=avg))
        survivors, removed = eliminate_sweep(entries, pm=0.01)
        for i in range(len(survivors) - 1):
            if survivors[i + 1].avg_fitness > survivors[i].avg_fitness:
                violations.append(
                    f"case {case}: survivor size {survivors[i].n} "
                    f"(avg {survivors[i].avg_fitness}) dominated by "
                    f"size {survivors[i+1].n} (avg {survivors[i+1].avg_fitness})"
                )
        for entry, reason in removed:
            dominated = any(
                other.n > entry.n and other.avg_fitness > entry.avg_fitness
                for other in entries
            )
            if reason != "dominated" or not dominated:
                violations.append(
                    f"case {case}: size {entry.n} removed without a dominator"
                )
        kept_ids = [id(e) for e in survivors]
        original_order = [id(e) for e in entries if id(e) in set(kept_ids)]
        if kept_ids != original_order:
            violations.append(f"case {case}: survivor order changed")
        if len(survivors) + len(removed) != count:
            violations.append(f"case {case}: entries lost or duplicated")
        if violations:
            break
    return violations


def check_replay_identity() -> list[str]:
    """The same config and master seed must reproduce output files byte
    for byte."""
    cfg = load_config(overrides={
        "experiment.algorithm": "apga",
        "experiment.runs": "3",
        "experiment.max_evals": "4000",
        "experiment.seed": "11",
        "experiment.trace": "true",
        "problem.family": "onemax",
        "problem.length": "30",
    })
    blobs = []
    for _ in range(2):
        summary = run_experiment(cfg)
        with tempfile.TemporaryDirectory() as tmp:
            csv_path = os.path.join(tmp, "out.csv")
            trace_path = os.path.join(tmp, "trace.csv")
            emit_csv([summary], csv_path)
            emit_trace(summary.trace, trace_path, cfg.algorithm, summary.meta)
            with open(csv_path, "rb") as f:
                csv_bytes = f.read()
            with open(trace_path, "rb") as f:
                trace_bytes = f.read()
        blobs.append((csv_bytes, trace_bytes))
    if blobs[0] != blobs[1]:
        return ["replay produced different bytes for identical config and seed"]
    return []


VERIFY_CHECKS = [
    ("size bound after warmup", check_size_bounds),
    ("size recurrence and fixed-lifetime drop", check_fixed_lifetime_drop),
    ("schedule fidelity (m=2)", check_schedule_fidelity),
    ("elimination ordering", check_elimination_ordering),
    ("replay byte identity", check_replay_identity),
]


def run_verify(report=print) -> bool:
    """Run every built-in check; report PASS/FAIL per check and return
    overall success."""
    ok = True
    for name, check in VERIFY_CHECKS:
        violations = check()
        if violations:
            ok = False
            report(f"FAIL {name}")
            for v in violations[:10]:
                report(f"  {v}")
            if len(violations) > 10:
                report(f"  ... and {len(violations) - 10} more")
        else:
            report(f"PASS {name}")
    return ok
