"""Trace the two characteristic size trajectories of the adaptive engine.

Fixed lifetimes (min_lt = max_lt = 100, 60 founders) give a deterministic
climb of 60 + 2t followed by a collapse to 200 or 201 at generation 100;
adaptive lifetimes in [1, 11] pin the size near 12 regardless of the
starting size. Writes one trace CSV per case.

Usage: python scripts/trace_size_dynamics.py [--out-dir DIR]
"""

import argparse
import math
import os

from popsizing.harness import (
    emit_trace,
    load_config,
    run_experiment,
)


def trace_case(name: str, overrides: dict[str, str], out_dir: str) -> None:
    cfg = load_config(None, {
        "experiment.runs": "1",
        "experiment.trace": "true",
        **overrides,
    })
    summary = run_experiment(cfg)
    path = os.path.join(out_dir, f"trace_{name}.csv")
    emit_trace(summary.trace, path, summary.algorithm, summary.meta)
    sizes = [row[2] for row in summary.trace.samples]
    print(f"{name}: wrote {path}")
    return sizes


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=".", help="directory for trace CSVs")
    args = parser.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    sizes = trace_case("fixed_lifetime_100", {
        "experiment.seed": "3",
        "experiment.target": "none",
        "experiment.max_evals": str(60 + 2 * 130),
        "problem.family": "onemax",
        "problem.length": "50",
        "apga.p0": "60",
        "lifetime.min_lt": "100",
        "lifetime.max_lt": "100",
    }, args.out_dir)
    print(f"  size(99) = {sizes[99]}, size(100) = {sizes[100]} "
          f"(climb to 258, drop to 200 or 201)")

    sizes = trace_case("adaptive_lifetime_1_11", {
        "experiment.seed": "3",
        "experiment.target": "none",
        "experiment.max_evals": str(60 + 2 * 500),
        "problem.family": "multimodal",
        "problem.length": "100",
        "problem.peaks": "50",
        "problem.instance_seed": "2024",
        "apga.p0": "60",
    }, args.out_dir)
    settled = sizes[22:]
    print(f"  mean size over generations 22..{len(sizes) - 1} = "
          f"{math.fsum(settled) / len(settled):.2f} (hovers near min_lt + max_lt = 12)")


if __name__ == "__main__":
    main()
