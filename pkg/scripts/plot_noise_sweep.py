#!/usr/bin/env python3
"""Plot the outcome distributions produced by run_noise_sweep.py.

Usage:
    python scripts/plot_noise_sweep.py results/noise_sweep.csv [-o sweep.png]
"""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path")
    ap.add_argument("-o", "--output", default="noise_sweep.png")
    args = ap.parse_args()

    series = defaultdict(dict)
    errors = defaultdict(dict)
    with open(args.csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            nu = float(row["nu"])
            series[nu][int(row["y"])] = float(row["mean_prob"])
            errors[nu][int(row["y"])] = float(row["stderr"])

    fig, ax = plt.subplots(figsize=(6, 4))
    for nu in sorted(series):
        ys = sorted(series[nu])
        probs = [series[nu][y] for y in ys]
        errs = [errors[nu][y] for y in ys]
        ax.errorbar(ys, probs, yerr=errs, marker="o", capsize=3,
                    label=f"noise {nu}")
    ax.set_xlabel("measured register value")
    ax.set_ylabel("mean probability")
    ax.set_xticks(range(4))
    ax.set_ylim(0, 0.6)
    ax.legend()
    ax.set_title("Factoring-15 readout vs controlled-phase noise")
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
