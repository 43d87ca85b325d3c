"""Regenerate tests/golden/worked_instances.json from brute-force routes only.

kappa comes from removing every vertex subset, lambda and super-lambda from
the all-subsets boundary table, shapes and strong connectivity from plain BFS.
The algebraic witness is recorded next to the oracle's least strict fragment
so the test can check that the two coincide.

    python scripts/make_golden.py [--out tests/golden/worked_instances.json]
"""

from __future__ import annotations

import argparse
import itertools
import json
from collections import deque
from pathlib import Path

from bicayley.connectivity import is_super_lambda_bruteforce, lambda_oracle
from bicayley.criteria import theorem39_find_witness
from bicayley.digraph import BiCayleySpec, build_bicayley
from bicayley.groups import parse_group

INSTANCES = [
    ("cyclic:4", [0, 1, 2], [0, 2]),
    ("cyclic:3", [0, 1, 2], [0, 1, 2]),
    ("cyclic:3", [0], [1]),
    ("cyclic:3", [0, 1], [0, 1]),
    ("cyclic:2", [0], [0]),
]


def reach(n, arcs, s):
    adj = {v: [] for v in range(n)}
    for u, v in arcs:
        adj[u].append(v)
    seen, queue = {s}, deque([s])
    while queue:
        for v in adj[queue.popleft()]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def strongly_connected(n, arcs):
    return all(len(reach(n, arcs, v)) == n for v in range(n))


def removal_kappa(n, arcs):
    for k in range(n):
        for cut in itertools.combinations(range(n), k):
            rest = [v for v in range(n) if v not in cut]
            if len(rest) <= 1:
                return k
            pos = {v: i for i, v in enumerate(rest)}
            sub = [(pos[u], pos[v]) for u, v in arcs if u in pos and v in pos]
            if not strongly_connected(len(rest), sub):
                return k
    return n - 1


def shape(n, arcs):
    outd = [sum(1 for u, _ in arcs if u == v) for v in range(n)]
    ind = [sum(1 for _, w in arcs if w == v) for v in range(n)]
    if all(d == 1 for d in outd + ind):
        return "directed-cycle"
    symmetric = all((v, u) in arcs for u, v in arcs)
    if n >= 3 and symmetric and all(d == 2 for d in outd):
        return "symmetric-cycle"
    return None


def golden_entry(desc, T0, T1) -> dict:
    spec = BiCayleySpec.of(parse_group(desc), T0, T1)
    X = build_bicayley(spec)
    n, arcs = X.vertex_count, set(X.arcs)
    outd = [sum(1 for u, _ in arcs if u == v) for v in range(n)]
    ind = [sum(1 for _, w in arcs if w == v) for v in range(n)]
    entry = {
        "group": desc, "T0": T0, "T1": T1,
        "strongly_connected": strongly_connected(n, arcs),
        "delta": min(min(outd), min(ind)),
        "kappa": None, "lambda": None, "shape_exclusion": None,
        "super_lambda": None, "oracle_fragment": None, "witness": None,
    }
    if not entry["strongly_connected"]:
        return entry
    entry["kappa"] = removal_kappa(n, arcs)
    entry["lambda"] = lambda_oracle(X)[0]
    entry["shape_exclusion"] = shape(n, arcs)
    if entry["shape_exclusion"]:
        return entry
    sup, frag = is_super_lambda_bruteforce(X)
    entry["super_lambda"] = sup
    if not sup:
        entry["oracle_fragment"] = list(frag.vertices)
        w = theorem39_find_witness(spec)
        entry["witness"] = None if w is None else w.to_dict()
    return entry


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="tests/golden/worked_instances.json")
    args = ap.parse_args(argv)
    doc = [golden_entry(*inst) for inst in INSTANCES]
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(doc)} instances to {path}")


if __name__ == "__main__":
    main()
