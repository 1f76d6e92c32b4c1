#!/usr/bin/env python3
"""Sweep the benchmark over commit counts and fit the time/commits line.

Prints one CSV row per size (median of the repeats) followed by the
least-squares fit, mirroring the linearity check in the acceptance suite.
"""

import argparse

from busfactor.bench import linear_fit, run_benchmark


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes", default="1000,2000,4000,8000", help="comma-separated commit counts"
    )
    parser.add_argument("--files", type=int, default=500)
    parser.add_argument("--authors", type=int, default=10)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    medians = []
    print("commits,files,authors,median_wall_s,peak_rss_mb")
    for commits in sizes:
        report = run_benchmark(
            commits=commits,
            files=args.files,
            authors=args.authors,
            repeat=args.repeat,
            seed=args.seed,
        )
        medians.append(report.median_wall_s)
        print(
            f"{commits},{args.files},{args.authors},"
            f"{report.median_wall_s:.4f},{report.peak_rss_mb:.1f}"
        )
    fit = linear_fit([float(n) for n in sizes], medians)
    print(
        f"# fit: time = {fit.slope:.3e} * commits + {fit.intercept:.4f}  "
        f"(r_squared = {fit.r_squared:.4f})"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
