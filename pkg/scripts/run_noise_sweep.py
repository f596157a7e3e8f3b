#!/usr/bin/env python3
"""Reproduce the noisy factoring ensemble data.

Runs the four-level noise sweep with 1000 realizations per level and
writes one CSV (plus a JSON copy with the config echo).  Plotting is a
separate step; see plot_noise_sweep.py.

Usage:
    python scripts/run_noise_sweep.py [--out-dir results] [--seed 2024]
"""

import argparse
import json
import pathlib

from qdouble import __version__, shor

NUS = [0.0, 0.1, 0.5, 1.0]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--realizations", type=int, default=1000)
    ap.add_argument("--backend", choices=("ideal", "braided"), default="ideal")
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = shor.sweep(NUS, args.realizations, args.seed, args.backend)

    rows = [row for rep in reports for row in rep.rows()]
    csv_path = out / "noise_sweep.csv"
    with open(csv_path, "w", newline="") as fh:
        fh.write("nu,y,mean_prob,stderr,discarded\n")
        for r in rows:
            fh.write(f"{r['nu']!r},{r['y']},{r['mean_prob']!r},"
                     f"{r['stderr']!r},{r['discarded']}\n")
    with open(out / "noise_sweep.json", "w") as fh:
        json.dump({"version": __version__,
                   "config": {"nu": NUS, "realizations": args.realizations,
                              "seed": args.seed, "backend": args.backend},
                   "rows": rows}, fh, indent=2, sort_keys=True)

    for rep in reports:
        tv = shor.tv_distance(rep.mean)
        mean = [round(float(m), 4) for m in rep.mean]
        print(f"nu={rep.nu:<4}  mean={mean}  TV={tv:.4f}")
    print(f"wrote {csv_path}")


if __name__ == "__main__":
    main()
