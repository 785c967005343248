#!/usr/bin/env python3
"""Instrumented base-point sweep: sample random partially symmetric tensors,
certify their base-point counts, and tabulate against the Jacobsthal numbers
J_n = 1, 3, 5, 11 for dims 2..5.

Prints one line per trial (seed, count, wall time) and a summary table; with
--out the full per-trial record is written as a JSON artifact.  The seed
convention matches `weddle jacobsthal-sweep`, so any trial printed here can be
replayed through the CLI with the same --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weddle import loci, solve  # noqa: E402


def run_dim(dim: int, trials: int, master: random.Random, config_kw: dict) -> dict:
    expected = solve.jacobsthal(dim)
    rows = []
    for trial in range(trials):
        trial_seed = master.randrange(2**30)
        start = time.perf_counter()
        status = "certified"
        count = None
        tensor_json = None
        try:
            sampled, system, _ = loci.sample_general_cyclic(dim, rng=master)
            config = solve.SolveConfig(seed=trial_seed, **config_kw)
            result = solve.base_points(system, config)
        except (ValueError, RuntimeError):
            status = "error"
        else:
            if result.certified:
                count = result.count()
                if count != expected:
                    status = "mismatch"
                    tensor_json = sampled.to_json()
            else:
                status = "uncertified"
        elapsed = time.perf_counter() - start
        rows.append(
            {
                "trial": trial,
                "seed": trial_seed,
                "status": status,
                "count": count,
                "elapsed_s": round(elapsed, 3),
                "tensor": tensor_json,
            }
        )
        shown = "-" if count is None else str(count)
        print(f"  dim {dim} trial {trial:2d}: count {shown:>2} [{status}] "
              f"seed {trial_seed} ({elapsed:.2f}s)")
    certified = [r for r in rows if r["count"] is not None]
    matching = sum(1 for r in certified if r["count"] == expected)
    return {
        "dim": dim,
        "expected": expected,
        "trials": trials,
        "certified": len(certified),
        "matching": matching,
        "excluded": trials - len(certified),
        "rows": rows,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="2..5", help="range like 2..5 or list like 2,3")
    parser.add_argument("--trials", type=int, default=10, help="trials per dimension")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--track-tol", type=float, default=1e-10)
    parser.add_argument("--residual-tol", type=float, default=1e-8)
    parser.add_argument("--cluster-radius", type=float, default=1e-6)
    parser.add_argument("--out", type=Path, default=None, help="write JSON artifact here")
    args = parser.parse_args()

    if ".." in args.dims:
        lo, hi = args.dims.split("..")
        dims = list(range(int(lo), int(hi) + 1))
    else:
        dims = [int(d) for d in args.dims.split(",")]
    bad = [d for d in dims if not 2 <= d <= 5]
    if bad:
        parser.error(f"dims outside the supported range 2..5: {bad}")

    config_kw = {
        "track_tol": args.track_tol,
        "residual_tol": args.residual_tol,
        "cluster_radius": args.cluster_radius,
    }
    master = random.Random(args.seed)
    started = time.perf_counter()
    summaries = [run_dim(dim, args.trials, master, config_kw) for dim in dims]
    total = time.perf_counter() - started

    print()
    print(f"{'dim':>3} {'J_n':>4} {'certified':>9} {'matching':>8} {'excluded':>8}")
    ok = True
    for s in summaries:
        print(f"{s['dim']:>3} {s['expected']:>4} {s['certified']:>9} "
              f"{s['matching']:>8} {s['excluded']:>8}")
        ok = ok and s["certified"] > 0 and s["matching"] == s["certified"]
    print(f"total {total:.1f}s; every certified count matches J_n: {ok}")

    if args.out is not None:
        artifact = {
            "seed": args.seed,
            "trials": args.trials,
            "dims": [s["dim"] for s in summaries],
            "summaries": summaries,
            "all_match": ok,
            "elapsed_s": round(total, 3),
        }
        args.out.write_text(json.dumps(artifact, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
