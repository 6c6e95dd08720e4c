"""Command-line interface.

Subcommands:
  run     execute an experiment (config file and/or flags), write a
          summary CSV; multimodal peak lists expand to one row each
  trace   single seeded run with tracing forced; writes the trace file
  sweep   like run, but --algorithm may be a comma list (full grid)
  verify  built-in property suite; exit 1 on any violation

Exit codes: 0 success, 1 verification violation, 2 configuration error.
Flags override config-file keys. POPSIZING_OUT_DIR sets the directory
for default output paths.
"""

from __future__ import annotations

import argparse
import sys

from .core import ConfigurationError
from .harness import (
    derive_variant,
    emit_csv,
    emit_trace,
    load_config,
    resolve_out_path,
    run_experiment,
    run_verify,
)

# flag name -> config "section.key"
_FLAG_MAP = {
    "algorithm": "experiment.algorithm",
    "runs": "experiment.runs",
    "max_evals": "experiment.max_evals",
    "target": "experiment.target",
    "seed": "experiment.seed",
    "family": "problem.family",
    "length": "problem.length",
    "peaks": "problem.peaks",
    "scheme": "problem.scheme",
    "h_min": "problem.h_min",
    "instance_seed": "problem.instance_seed",
    "instance_file": "problem.instance_file",
    "blocks": "problem.blocks",
    "block_size": "problem.block_size",
    "signal": "problem.signal",
    "value": "problem.value",
    "pc": "operators.pc",
    "pm": "operators.pm",
    "tournament_k": "operators.tournament_k",
    "min_lt": "lifetime.min_lt",
    "max_lt": "lifetime.max_lt",
    "rho": "gavaps.rho",
    "size_cap": "gavaps.size_cap",
    "n": "tga.n",
    "n0": "parameterless.n0",
    "m": "parameterless.m",
    "mode": "parameterless.mode",
}


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI config file; flags override its keys")
    p.add_argument("--algorithm", help="apga | gavaps | tga | parameterless")
    p.add_argument("--family", help="onemax | multimodal | trap | constant")
    p.add_argument("--length", help="genome length L")
    p.add_argument("--peaks", help="peak count, or comma list (one result row each)")
    p.add_argument("--scheme", help="peak height scheme: equal | linear")
    p.add_argument("--h-min", dest="h_min", help="lowest height for the linear scheme")
    p.add_argument("--instance-seed", dest="instance_seed",
                   help="seed for generated landscape instances")
    p.add_argument("--instance-file", dest="instance_file",
                   help="frozen landscape instance file (overrides generation)")
    p.add_argument("--blocks", help="number of trap blocks m")
    p.add_argument("--block-size", dest="block_size", help="bits per trap block k")
    p.add_argument("--signal", help="trap fitness signal d")
    p.add_argument("--value", help="constant problem fitness value")
    p.add_argument("--pc", help="crossover probability")
    p.add_argument("--pm", help="per-bit mutation probability (default 1/L)")
    p.add_argument("--tournament-k", dest="tournament_k", help="tournament size")
    p.add_argument("--min-lt", dest="min_lt", help="minimum lifetime")
    p.add_argument("--max-lt", dest="max_lt", help="maximum lifetime")
    p.add_argument("--p0", help="initial population size (apga, gavaps)")
    p.add_argument("--rho", help="gavaps reproduction ratio")
    p.add_argument("--size-cap", dest="size_cap", help="gavaps explosion bound")
    p.add_argument("--n", help="tga fixed population size")
    p.add_argument("--n0", help="parameterless base population size")
    p.add_argument("--m", help="parameterless schedule preference")
    p.add_argument("--mode", help="parameterless inner GA: steady_state | generational")
    p.add_argument("--runs", help="independent runs per experiment")
    p.add_argument("--max-evals", dest="max_evals", help="evaluation budget per run")
    p.add_argument("--target", help="target fitness: optimum | none | number")
    p.add_argument("--seed", help="master seed (per-run seeds derive from it)")
    p.add_argument("--out", help="summary CSV path")
    p.add_argument("--trace-out", dest="trace_out", help="trace CSV path")
    p.add_argument("--trace", action="store_true", default=None,
                   help="also record a trace of the first run")


def _overrides_from(args: argparse.Namespace) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for flag, dotted in _FLAG_MAP.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[dotted] = value
    if getattr(args, "p0", None) is not None:
        overrides["apga.p0"] = args.p0  # shared field; either section works
    if getattr(args, "trace", None):
        overrides["experiment.trace"] = "true"
    if getattr(args, "out", None) is not None:
        overrides["experiment.out"] = args.out
    if getattr(args, "trace_out", None) is not None:
        overrides["experiment.trace_out"] = args.trace_out
    return overrides


def _summary_line(s) -> str:
    def show(x):
        return "NA" if x is None else f"{x:.6g}"

    return (f"{s.algorithm} on {s.problem_label}: sr={show(s.sr)} mbf={show(s.mbf)} "
            f"aes={show(s.aes)} aps={show(s.aps)} [{s.config_hash}]")


def _cmd_run(args: argparse.Namespace, algorithms: list[str] | None = None) -> int:
    base = load_config(args.config, _overrides_from(args))
    configs = []
    for algorithm in algorithms or [base.algorithm]:
        cfg = derive_variant(base, algorithm=algorithm)
        configs.extend(cfg.variants())
    summaries = [run_experiment(cfg) for cfg in configs]
    out = resolve_out_path(base.out, "results.csv")
    emit_csv(summaries, out)
    for s in summaries:
        print(_summary_line(s))
    print(f"wrote {out}")
    if base.trace:
        trace_out = resolve_out_path(base.trace_out, "trace.csv")
        first = summaries[0]
        emit_trace(first.trace, trace_out, first.algorithm, first.meta)
        print(f"wrote {trace_out}")
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    overrides = _overrides_from(args)
    overrides["experiment.runs"] = "1"
    overrides["experiment.trace"] = "true"
    cfg = load_config(args.config, overrides)
    summary = run_experiment(cfg.variants()[0])
    trace_out = resolve_out_path(cfg.trace_out, "trace.csv")
    emit_trace(summary.trace, trace_out, summary.algorithm, summary.meta)
    print(_summary_line(summary))
    print(f"wrote {trace_out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    algorithms = None
    if args.algorithm is not None:
        algorithms = [a.strip() for a in args.algorithm.split(",")]
        args.algorithm = algorithms[0]
    return _cmd_run(args, algorithms=algorithms)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="popsizing",
        description="Benchmark harness for on-the-fly population sizing in GAs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("run", "execute an experiment and write a summary CSV"),
        ("trace", "run once with tracing and write the trace CSV"),
        ("sweep", "run a grid: comma lists in --algorithm/--peaks expand"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_experiment_flags(p)
    sub.add_parser("verify", help="run built-in property checks; exit 1 on violation")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "trace":
            return _cmd_trace(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return 0 if run_verify() else 1
    except ConfigurationError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
