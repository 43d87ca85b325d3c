"""Crossing positive arc fragments whose differences are not fragments.

Scans BD(G, T0, T1) over the given groups, collects every crossing pair of
positive fragments and reports which of the four derived sets (meet, join,
A-B, B-A) fail to be fragments, split by balanced (|T0| = |T1|) versus
unbalanced connection sets. Ends by printing the smallest failing pair.

    python scripts/fragment_algebra_counterexample.py --group cyclic:3 --group cyclic:4
"""

from __future__ import annotations

import argparse
import itertools
from collections import Counter

from bicayley.connectivity import POSITIVE, SubsetOracle, boundary_size, fragment_algebra_detail
from bicayley.criteria import applicability
from bicayley.digraph import build_bicayley
from bicayley.harness import SweepConfig, enumerate_specs


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", action="append", default=None)
    args = ap.parse_args(argv)
    groups = args.group or ["cyclic:3", "cyclic:4"]

    tally = {True: Counter(), False: Counter()}
    pairs = Counter()
    smallest = None
    for spec in enumerate_specs(SweepConfig(groups)):
        if not applicability(spec).strongly_connected:
            continue
        X = build_bicayley(spec)
        o = SubsetOracle(X)
        balanced = len(spec.T0) == len(spec.T1)
        for a, b in itertools.combinations(o.fragments(POSITIVE), 2):
            detail = fragment_algebra_detail(X, a, b, o)
            if detail is None:
                continue
            pairs[balanced] += 1
            for name, ok in detail.items():
                if not ok:
                    tally[balanced][name] += 1
            if not all(detail.values()):
                key = (X.vertex_count, len(a) + len(b))
                if smallest is None or key < smallest[0]:
                    smallest = (key, spec, a, b, detail, o.lam)

    for balanced in (True, False):
        label = "balanced" if balanced else "unbalanced"
        fails = ", ".join(f"{k}: {v}" for k, v in sorted(tally[balanced].items())) or "none"
        print(f"{label:<11} crossing pairs {pairs[balanced]:>7}   failing sets  {fails}")
    if smallest:
        _, spec, a, b, detail, lam = smallest
        X = build_bicayley(spec)
        print(f"\nsmallest: {spec}, lambda = {lam}")
        print(f"  A = {list(a.vertices)}  B = {list(b.vertices)}")
        for name, m in (("A&B", a.mask & b.mask), ("A|B", a.mask | b.mask),
                        ("A-B", a.mask & ~b.mask), ("B-A", b.mask & ~a.mask)):
            print(f"  {name}: |omega+| = {boundary_size(X, m)}  fragment={detail[name]}")


if __name__ == "__main__":
    main()
