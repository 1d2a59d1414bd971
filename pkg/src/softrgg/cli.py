"""Command-line front end: simulate, thresholds, verify, sweep.

Exit codes: 0 success, 1 internal error, 2 usage error, 3 infeasible
configuration (no valid threshold for the requested (alpha, n, r)),
4 verification-suite failure.  All floats are serialized with 17
significant digits so files round-trip bit-faithfully.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .analytics import tv_bound_report
from .connection import CAPPED_POWER, EXP_FORM
from .errors import DomainError, InfeasibleThresholdError
from .mc_engine import ExperimentConfig, run_experiment, verdict
from .points import WindowParams
from .regimes import classify, threshold_r_n, transform_f_n
from .verify import run_suite

_FORM_CHOICES = (CAPPED_POWER, EXP_FORM)


def _fmt(x) -> object:
    """JSON-safe value with floats at 17 significant digits."""
    if isinstance(x, float):
        if math.isnan(x):
            return None
        return float(f"{x:.17g}")
    return x


def _json_line(obj: dict) -> str:
    return json.dumps({k: _fmt(v) for k, v in obj.items()}, sort_keys=True)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _workers(args) -> int:
    env = os.environ.get("SOFTRGG_WORKERS")
    if env is not None:
        try:
            val = int(env)
        except ValueError as exc:
            raise DomainError(f"SOFTRGG_WORKERS must be an integer, got {env!r}") from exc
        if val < 1:
            raise DomainError("SOFTRGG_WORKERS must be >= 1")
        return val
    return args.workers


def _write_run(out_dir: Path, cfg: ExperimentConfig, started: float) -> None:
    results = run_experiment(cfg)
    rep = verdict(cfg, results)
    out_dir.mkdir(parents=True, exist_ok=True)

    results_path = out_dir / "results.jsonl"
    with results_path.open("w") as fh:
        for rr in results:
            fh.write(_json_line(asdict(rr)) + "\n")

    verdict_path = out_dir / "verdict.json"
    verdict_path.write_text(_json_line(asdict(rep)) + "\n")

    manifest = {
        "tool_version": __version__,
        "config": {k: _fmt(v) for k, v in asdict(cfg).items()},
        "started": started,
        "finished": time.time(),
        "digests": {
            "results.jsonl": _sha256(results_path),
            "verdict.json": _sha256(verdict_path),
        },
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n"
    )


def cmd_simulate(args) -> int:
    cfg = ExperimentConfig(
        alpha=args.alpha, n=args.n, r=args.r, replications=args.reps,
        master_seed=args.seed, connection_form=args.form, workers=_workers(args),
    )
    _write_run(Path(args.out), cfg, time.time())
    return 0


def cmd_thresholds(args) -> int:
    print("alpha,n,r,regime,r_n,f_n_r_n,sqrt_r")
    for alpha in args.alpha:
        spec = classify(alpha)
        for n in args.n:
            w = WindowParams(n)
            for r in args.r:
                rn = threshold_r_n(spec, w, r)
                fn = transform_f_n(spec, w, rn)
                print(
                    f"{alpha:.17g},{n},{r:.17g},{spec.regime.value},"
                    f"{rn:.17g},{fn:.17g},{math.sqrt(r):.17g}"
                )
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, fast=args.fast, workers=_workers(args))
    failed = 0
    for cr in results:
        status = "PASS" if cr.passed else "FAIL"
        failed += 0 if cr.passed else 1
        extra = f"  [{cr.detail}]" if cr.detail else ""
        print(
            f"{status}  {cr.name}: measured {cr.measured:.6g} "
            f"vs tolerance {cr.tolerance:.6g}{extra}"
        )
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 4


def cmd_sweep(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = classify(args.alpha)
    rows = []
    for n in args.n_list:
        cfg = ExperimentConfig(
            alpha=args.alpha, n=n, r=args.r, replications=args.reps,
            master_seed=args.seed, workers=_workers(args),
        )
        results = run_experiment(cfg)
        rep = verdict(cfg, results)
        (out_dir / f"verdict_n{n}.json").write_text(_json_line(asdict(rep)) + "\n")
        w = WindowParams(n)
        rn = threshold_r_n(spec, w, args.r)
        tv = tv_bound_report(args.alpha, w, args.r)
        rows.append(
            f"{args.alpha:.17g},{n},{args.r:.17g},{spec.regime.value},{rn:.17g},"
            f"{rep.mean_w:.17g},{tv.tv_bound:.17g},{rep.ks_to_uniform:.17g},"
            f"{rep.empirical_prob_below_threshold:.17g},"
            f"{rep.wilson_low:.17g},{rep.wilson_high:.17g}"
        )
    header = "alpha,n,r,regime,r_n,mean_w,tv_bound,ks_uniform,prob_below,wilson_lo,wilson_hi"
    (out_dir / "rates.csv").write_text(header + "\n" + "\n".join(rows) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="softrgg",
        description="Longest-edge experiments for soft random geometric graphs on an interval",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one seeded experiment")
    sim.add_argument("--alpha", type=float, required=True)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--r", type=float, required=True)
    sim.add_argument("--reps", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--form", choices=_FORM_CHOICES, default=CAPPED_POWER)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--out", type=str, required=True)
    sim.set_defaults(func=cmd_simulate)

    thr = sub.add_parser("thresholds", help="print the threshold table")
    thr.add_argument("--alpha", type=float, action="append", required=True)
    thr.add_argument("--n", type=int, action="append", required=True)
    thr.add_argument("--r", type=float, action="append", required=True)
    thr.set_defaults(func=cmd_thresholds)

    ver = sub.add_parser("verify", help="run an acceptance suite")
    ver.add_argument(
        "--suite", choices=("analytics", "corollary", "ks", "poisson", "all"),
        required=True,
    )
    ver.add_argument("--fast", action="store_true")
    ver.add_argument("--workers", type=int, default=1)
    ver.set_defaults(func=cmd_verify)

    swp = sub.add_parser("sweep", help="n-sweep with rate table")
    swp.add_argument("--alpha", type=float, required=True)
    swp.add_argument("--r", type=float, required=True)
    swp.add_argument(
        "--n-list", type=lambda s: tuple(int(t) for t in s.split(",")), required=True,
    )
    swp.add_argument("--reps", type=int, default=1000)
    swp.add_argument("--seed", type=int, default=0)
    swp.add_argument("--workers", type=int, default=1)
    swp.add_argument("--out", type=str, required=True)
    swp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InfeasibleThresholdError as exc:
        print(f"error: {exc} (n too small for (alpha, r))", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
