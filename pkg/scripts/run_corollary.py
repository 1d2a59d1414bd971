#!/usr/bin/env python3
"""Estimate P(longest edge <= r_n) across regimes and compare with sqrt(r).

Example:
    python scripts/run_corollary.py --n 1000 --reps 10000 --workers 4
"""

import argparse
import math

import numpy as np

from softrgg.mc_engine import collect_longest_edges, wilson_interval
from softrgg.points import WindowParams
from softrgg.regimes import classify, threshold_r_n


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--reps", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=131071)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--alphas", type=str, default="0.5,1,1.5,2,3")
    ap.add_argument("--levels", type=str, default="0.25,0.5,0.75")
    args = ap.parse_args()

    alphas = [float(t) for t in args.alphas.split(",")]
    levels = [float(t) for t in args.levels.split(",")]
    w = WindowParams(args.n)
    print("alpha,r,r_n,p_hat,sqrt_r,wilson_lo,wilson_hi")
    for k, alpha in enumerate(alphas):
        spec = classify(alpha)
        edges = collect_longest_edges(
            alpha, args.n, args.reps, args.seed + k, workers=args.workers
        )
        for r in levels:
            rn = threshold_r_n(spec, w, r)
            below = int(np.count_nonzero(~(edges > rn)))
            lo, hi = wilson_interval(below, args.reps)
            print(
                f"{alpha},{r},{rn:.6g},{below / args.reps:.5f},"
                f"{math.sqrt(r):.5f},{lo:.5f},{hi:.5f}"
            )


if __name__ == "__main__":
    main()
