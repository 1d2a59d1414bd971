#!/usr/bin/env python3
"""Tabulate the analytic Poisson-approximation bound and mean across n.

Prints one row per n with the mean exceedance count, its gap to the
limit -0.5 ln r, the total-variation bound and the doubling factor of
the bound, for eyeballing decay rates.

Example:
    python scripts/run_rate_sweep.py --alpha 1.5 --r 0.5 --n-list 1000,2000,4000,8000
"""

import argparse
import math

from softrgg.analytics import tv_bound_report
from softrgg.points import WindowParams


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, required=True)
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--n-list", type=str, default="1000,2000,4000,8000,16000")
    args = ap.parse_args()

    ns = [int(t) for t in args.n_list.split(",")]
    limit = -0.5 * math.log(args.r)
    prev = None
    print("n,r_n,mean_w,gap_to_limit,max_tail,tv_bound,doubling_factor")
    for n in ns:
        rep = tv_bound_report(args.alpha, WindowParams(n), args.r)
        factor = "" if prev is None else f"{prev / rep.tv_bound:.4f}"
        print(
            f"{n},{rep.r_n:.6g},{rep.mean:.6g},{abs(rep.mean - limit):.3e},"
            f"{rep.max_tail_integral:.3e},{rep.tv_bound:.3e},{factor}"
        )
        prev = rep.tv_bound


if __name__ == "__main__":
    main()
