"""Empirical share of super-lambda digraphs among theorem-applicable BD(G, T0, T1).

Exhaustive for small groups, seeded samples otherwise. Prints one table row
per group; the verdict is the algebraic one, confirmed by the subset oracle
whenever 2|G| is under the threshold.

    python scripts/superlambda_fraction.py --group cyclic:4 --group dihedral:4 --samples 300
"""

from __future__ import annotations

import argparse

from bicayley.groups import parse_group
from bicayley.harness import EXHAUSTIVE_GROUP_CAP, SweepConfig, run_sweep, summarize


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", action="append",
                    default=None, help="group descriptor (repeatable)")
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--exhaustive-max", type=int, default=4,
                    help="largest order swept exhaustively (at most %d)" % EXHAUSTIVE_GROUP_CAP)
    args = ap.parse_args(argv)
    groups = args.group or ["cyclic:3", "cyclic:4", "product:cyclic:2,cyclic:2", "symmetric:3",
                            "cyclic:8", "dihedral:4"]

    print(f"{'group':<34} {'mode':<10} {'applicable':>10} {'super':>7} {'not':>7} {'fraction':>9} {'falsif.':>8}")
    for desc in groups:
        n = parse_group(desc).order
        mode = "exhaustive" if n <= min(args.exhaustive_max, EXHAUSTIVE_GROUP_CAP) else "sampled"
        cfg = SweepConfig([desc], mode=mode, sample_count=args.samples, rng_seed=args.seed,
                          checks=("superlambda",))
        s = summarize(run_sweep(cfg))
        c = s["categories"]
        frac = s["super_lambda_fraction"]
        frac = f"{frac:.3f}" if isinstance(frac, float) else frac
        applicable = c["super-lambda"] + c["not-super-lambda"] + c["unconfirmed"]
        print(f"{desc:<34} {mode:<10} {applicable:>10} {c['super-lambda']:>7} "
              f"{c['not-super-lambda']:>7} {frac:>9} {s['falsifications']:>8}")


if __name__ == "__main__":
    main()
