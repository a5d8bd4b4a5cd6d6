#!/usr/bin/env python3
"""Benchmark statistic runtime against sample size.

Times the full pipeline (distances, ranks, map, smoothed maximum) on
standard-normal data, reporting the median of repeated runs after a
warmup. The multiscale statistic should scale like the global one up to a
modest constant, roughly quadrupling per doubling of n.

Example:
    python scripts/run_runtime_bench.py --n-grid 50,100,200,400 --runs 10
"""

import argparse
import csv
import sys

from mgcorr import RngSpec, runtime_bench


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-grid", default="50,100,200,400",
                        help="comma-separated sample sizes")
    parser.add_argument("--p", type=int, default=1, help="data dimension")
    parser.add_argument("--runs", type=int, default=10,
                        help="timed runs per point (median reported)")
    parser.add_argument("--seed", type=int, default=5, help="master seed")
    parser.add_argument("--output", default=None, help="optional CSV path")
    args = parser.parse_args(argv)

    sizes = [int(v) for v in args.n_grid.split(",")]
    entries = runtime_bench(
        sizes, p=args.p, rng=RngSpec(master_seed=args.seed), runs=args.runs
    )

    seconds = {(e.n, e.method): e.seconds for e in entries}
    methods = sorted({e.method for e in entries})
    print(f"{'n':>6}  " + "  ".join(f"{m:>12}" for m in methods) + "  growth(mgc)")
    prev_mgc = None
    for n in sizes:
        cells = "  ".join(f"{seconds[(n, m)] * 1e3:>10.2f}ms" for m in methods)
        growth = ""
        if prev_mgc is not None:
            growth = f"x{seconds[(n, 'mgc')] / prev_mgc:.2f}"
        prev_mgc = seconds.get((n, "mgc"))
        print(f"{n:>6}  {cells}  {growth}")

    if args.output:
        with open(args.output, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("n", "method", "seconds"))
            for e in entries:
                writer.writerow((e.n, e.method, f"{e.seconds:.9f}"))
        print(f"\nwrote {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
