"""Graded random landscapes: success-rate direction and cost asymmetry.

With linearly graded peak heights only the tallest peak counts as a
solution. The size-adapting engine climbs whatever peak is nearest, so it
succeeds only when that happens to be the right one, but then very
cheaply; the multi-population scheme keeps escalating population sizes
until the right basin is held. Default is a 20-run sketch per cell;
--runs 100 gives full-strength statistics (much slower, since every
failed run burns the full budget).

Usage: python scripts/landscape_showdown.py [--runs N] [--out results_landscape.csv]
"""

import argparse

from popsizing.harness import emit_csv, load_config, run_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=20)
    parser.add_argument("--budget", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=17)
    parser.add_argument("--instance-seed", type=int, default=2024)
    parser.add_argument("--out", default="results_landscape.csv")
    args = parser.parse_args()

    summaries = []
    for peaks in (50, 100):
        for algo in ("parameterless", "apga"):
            cfg = load_config(None, {
                "experiment.algorithm": algo,
                "experiment.runs": str(args.runs),
                "experiment.max_evals": str(args.budget),
                "experiment.seed": str(args.seed),
                "problem.family": "multimodal",
                "problem.length": "100",
                "problem.peaks": str(peaks),
                "problem.scheme": "linear",
                "problem.instance_seed": str(args.instance_seed),
            })
            s = run_experiment(cfg)
            summaries.append(s)
            aes = "NA" if s.aes is None else f"{s.aes:.0f}"
            aps = "NA" if s.aps is None else f"{s.aps:.0f}"
            print(f"{peaks:>3} peaks, {algo:>14}: sr={s.sr:.2f} "
                  f"mbf={s.mbf:.3f} aes={aes} aps={aps}")
    emit_csv(summaries, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
