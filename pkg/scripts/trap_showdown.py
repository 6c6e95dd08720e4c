"""Deceptive-trap contrast: multi-population scheme vs size-adapting engine.

Concatenated k-bit traps reward big populations; an engine whose size is
pinned near min_lt + max_lt cannot hold the building blocks together. The
desk-scale default (10 blocks, 5*10^5 budget, 50 runs) finishes in a few
minutes; --full switches to the 20-block setup with a 10^6 budget and 100
runs, which takes a while but shows the contrast at full strength.

Usage: python scripts/trap_showdown.py [--full] [--out results_trap.csv]
"""

import argparse

from popsizing.harness import emit_csv, load_config, run_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="20-block full scale (slow)")
    parser.add_argument("--runs", type=int, default=None)
    parser.add_argument("--seed", type=int, default=23)
    parser.add_argument("--out", default="results_trap.csv")
    args = parser.parse_args()

    blocks = 20 if args.full else 10
    budget = 1_000_000 if args.full else 500_000
    runs = args.runs if args.runs is not None else (100 if args.full else 50)

    summaries = []
    for algo in ("parameterless", "apga"):
        cfg = load_config(None, {
            "experiment.algorithm": algo,
            "experiment.runs": str(runs),
            "experiment.max_evals": str(budget),
            "experiment.seed": str(args.seed),
            "problem.family": "trap",
            "problem.blocks": str(blocks),
            "problem.block_size": "4",
            "problem.signal": "0.25",
        })
        s = run_experiment(cfg)
        summaries.append(s)
        aes = "NA" if s.aes is None else f"{s.aes:.0f}"
        aps = "NA" if s.aps is None else f"{s.aps:.0f}"
        print(f"{algo:>14} on {s.problem_label}: sr={s.sr:.2f} "
              f"mbf={s.mbf:.2f} aes={aes} aps={aps}")
    emit_csv(summaries, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
