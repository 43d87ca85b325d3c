"""Run the full check pipeline over the acceptance catalogs and write reports.

Exhaustive over Z1..Z6, Z2xZ2, S3, then seeded samples over Z8, D4, Z2^3.
Writes records.csv / records.json / summary.json per catalog under --out and
prints falsification counts by check.

    python scripts/run_acceptance_sweep.py --out runs/acceptance
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from bicayley.harness import SweepConfig, run_sweep, summarize, write_sweep

EXHAUSTIVE = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
              "product:cyclic:2,cyclic:2", "symmetric:3"]
SAMPLED = ["cyclic:8", "dihedral:4", "product:cyclic:2,cyclic:2,cyclic:2"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/acceptance")
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--pair-cap", type=int, default=50, help="fragment pairs checked per instance")
    args = ap.parse_args(argv)

    runs = {
        "exhaustive": SweepConfig(EXHAUSTIVE, mode="exhaustive", fragment_pair_cap=args.pair_cap),
        "sampled": SweepConfig(SAMPLED, mode="sampled", sample_count=args.samples,
                               rng_seed=args.seed, fragment_pair_cap=args.pair_cap),
    }
    for name, cfg in runs.items():
        t = time.perf_counter()
        records = run_sweep(cfg)
        summary = summarize(records)
        out = write_sweep(records, summary, Path(args.out) / name)
        print(f"[{name}] {summary['total']} instances in {time.perf_counter() - t:.1f}s -> {out}")
        print("  categories:", json.dumps(summary["categories"]))
        print("  falsifications by check:", json.dumps(summary["falsifications_by_check"]))
        print("  super-lambda fraction:", summary["super_lambda_fraction"])


if __name__ == "__main__":
    main()
