"""Batch sweeps: run every check on many ``(G, T0, T1)`` and collect records.

A disagreement between the algebraic side and an exhaustive oracle is never
raised as an exception; it lands in ``InstanceRecord.falsifications`` and is
counted by :func:`summarize`.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterator

from .connectivity import (
    DEFAULT_ORACLE_THRESHOLD,
    NEGATIVE,
    POSITIVE,
    ConnectivityError,
    OracleLimitError,
    SubsetOracle,
    _to_fragments,
    arc_connectivity,
    fragment_algebra_detail,
    find_lambda_superatoms,
    is_super_lambda_bruteforce,
    superatoms_partition,
    vertex_connectivity,
    verify_superatom_structure,
)
from .digraph import (
    BiCayleySpec,
    build_bicayley,
    is_arc_automorphism,
    is_strongly_connected,
    min_degrees,
    right_translation,
    to_dot,
)
from .groups import GroupError, parse_group
from .criteria import (
    applicability,
    predict_connectivities,
    strong_connectivity_criterion,
    theorem39_find_witness,
    validate_witness,
)

log = logging.getLogger(__name__)

CHECKS = ("connectivity", "superlambda", "automorphism", "superatom_structure", "fragment_algebra")
EXHAUSTIVE_GROUP_CAP = 8
PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class SweepConfig:
    group_descriptors: list[str] = field(default_factory=lambda: ["cyclic:4"])
    mode: str = "exhaustive"
    sample_count: int = 100
    rng_seed: int = 0
    oracle_threshold: int = DEFAULT_ORACLE_THRESHOLD
    output_dir: str = "sweep_out"
    checks: tuple[str, ...] = CHECKS
    strict_subset: bool = False
    fragment_pair_cap: int = 50
    force: bool = False

    def __post_init__(self):
        self.checks = tuple(self.checks)
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"mode must be 'exhaustive' or 'sampled', not {self.mode!r}")
        if self.mode == "sampled" and self.sample_count < 1:
            raise ValueError("sample_count must be at least 1 in sampled mode")
        if self.oracle_threshold < 4:
            raise ValueError("oracle_threshold must be at least 4")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    @classmethod
    def from_dict(cls, doc: dict) -> SweepConfig:
        names = {f.name for f in fields(cls)}
        extra = set(doc) - names
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**doc)


@dataclass
class InstanceRecord:
    group: str
    T0: list[int]
    T1: list[int]
    strongly_connected: bool = False
    shape_exclusion: str | None = None
    theorem_applicable: bool = False
    delta: int | None = None
    predicted: list[int] | None = None
    kappa: int | None = None
    lam: int | None = None
    algebraic_super_lambda: bool | None = None
    oracle_super_lambda: bool | None = None
    oracle_status: str = "skipped"
    witness: dict | None = None
    witness_valid: bool | None = None
    superatom_count: int | None = None
    fragment_pairs_checked: int = 0
    checks: dict[str, str] = field(default_factory=dict)
    falsifications: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def category(self) -> str:
        if self.errors:
            return "error"
        if not self.strongly_connected:
            return "not-strongly-connected"
        if self.shape_exclusion:
            return "cycle-excluded"
        if self.oracle_status != "confirmed":
            return "unconfirmed"
        return "super-lambda" if self.algebraic_super_lambda else "not-super-lambda"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> InstanceRecord:
        return cls(**doc)


CSV_COLUMNS = (
    "group", "T0", "T1", "strongly_connected", "shape_exclusion", "theorem_applicable",
    "delta", "predicted_kappa", "predicted_lambda", "kappa", "lambda",
    "algebraic_super_lambda", "oracle_super_lambda", "oracle_status",
    "witness_condition", "witness_H", "witness_t0", "witness_excluded_T0",
    "witness_excluded_T1", "witness_valid", "superatom_count", "fragment_pairs_checked",
    *(f"check_{c}" for c in CHECKS), "falsification",
)


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, tuple)):
        return " ".join(map(str, x))
    return str(x)


def csv_row(r: InstanceRecord) -> list[str]:
    w = r.witness or {}
    pred = r.predicted or [None, None, None]
    row = [
        r.group, r.T0, r.T1, r.strongly_connected, r.shape_exclusion, r.theorem_applicable,
        r.delta, pred[0], pred[1], r.kappa, r.lam,
        r.algebraic_super_lambda, r.oracle_super_lambda, r.oracle_status,
        w.get("condition"), w.get("H"), w.get("t0"), w.get("excluded_T0"),
        w.get("excluded_T1"), r.witness_valid, r.superatom_count, r.fragment_pairs_checked,
        *(r.checks.get(c, SKIP) for c in CHECKS), "; ".join(r.falsifications),
    ]
    return [_cell(x) for x in row]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(csv_row(r))
    return buf.getvalue()


# -- spec enumeration --------------------------------------------------------


def _subset(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def enumerate_specs(config: SweepConfig) -> Iterator[BiCayleySpec]:
    """Exhaustive: all ``(2^n - 1)^2`` nonempty pairs, ``T0`` major, each set
    ordered by its bitmask. Sampled: ``sample_count`` pairs per group of
    independent uniform nonempty subsets from one seeded stream."""
    rng = random.Random(config.rng_seed)
    for desc in config.group_descriptors:
        G = parse_group(desc)
        n = G.order
        top = 1 << n
        if config.mode == "exhaustive":
            if n > EXHAUSTIVE_GROUP_CAP and not config.force:
                raise OracleLimitError(
                    f"exhaustive sweep over {G.label} (order {n}) would need "
                    f"{(top - 1) ** 2} specs; use sampled mode or force"
                )
            for m0 in range(1, top):
                for m1 in range(1, top):
                    yield BiCayleySpec.of(G, _subset(m0, n), _subset(m1, n))
        else:
            for _ in range(config.sample_count):
                m0 = rng.randrange(1, top)
                m1 = rng.randrange(1, top)
                yield BiCayleySpec.of(G, _subset(m0, n), _subset(m1, n))


# -- one instance ------------------------------------------------------------


@contextmanager
def _phase(rec: InstanceRecord, name: str):
    t = time.perf_counter()
    try:
        yield
    finally:
        rec.timings[name] = rec.timings.get(name, 0.0) + time.perf_counter() - t


def _automorphism_ok(spec: BiCayleySpec, X) -> bool:
    G = spec.group
    n = G.order
    perms = [right_translation(spec, a) for a in G.elements]
    if not all(is_arc_automorphism(X, p) for p in perms):
        return False
    t, inv = G.product_table, G.inverse_table
    for g1 in G.elements:
        for g2 in G.elements:
            p = perms[t[inv[g1]][g2]]
            if p[g1] != g2 or p[n + g1] != n + g2:
                return False
    return True


def _fragment_pairs(X, oracle: SubsetOracle, cap: int) -> tuple[int, list[str]]:
    checked = 0
    bad = []
    for kind in (POSITIVE, NEGATIVE):
        frags = _to_fragments(oracle.fragment_masks(kind), kind, oracle.lam)
        for i, a in enumerate(frags):
            for b in frags[i + 1:]:
                if checked >= cap:
                    return checked, bad
                detail = fragment_algebra_detail(X, a, b, oracle)
                if detail is None:
                    continue
                checked += 1
                failed = [k for k, ok in detail.items() if not ok]
                if failed:
                    bad.append(f"[fragment_algebra] {kind} pair {list(a.vertices)} / "
                               f"{list(b.vertices)}: {' '.join(failed)} not fragments")
    return checked, bad


def run_instance(spec: BiCayleySpec, config: SweepConfig) -> InstanceRecord:
    rec = InstanceRecord(spec.group.label, list(spec.T0), list(spec.T1))
    try:
        _run(spec, config, rec)
    except (OracleLimitError, GroupError, ConnectivityError) as exc:
        rec.errors.append(f"{type(exc).__name__}: {exc}")
    return rec


def _run(spec: BiCayleySpec, config: SweepConfig, rec: InstanceRecord) -> None:
    checks = set(config.checks)
    bad = rec.falsifications
    with _phase(rec, "construct"):
        X = build_bicayley(spec)
    rec.delta = min_degrees(X)[2]
    for c in CHECKS:
        rec.checks[c] = SKIP

    with _phase(rec, "criteria"):
        rec.strongly_connected = strong_connectivity_criterion(spec)
        structural = is_strongly_connected(X)
    if rec.strongly_connected != structural:
        bad.append(f"[connectivity] strong connectivity: criterion {rec.strongly_connected}, digraph {structural}")
    if "connectivity" in checks:
        rec.checks["connectivity"] = FAIL if bad else PASS
    if not (rec.strongly_connected and structural):
        return

    pred = predict_connectivities(spec)
    rec.predicted = list(pred)
    if "connectivity" in checks:
        with _phase(rec, "flow"):
            rec.kappa = vertex_connectivity(X)
            rec.lam = arc_connectivity(X)
        if [rec.kappa, rec.lam] != [pred[0], pred[1]]:
            bad.append(f"[connectivity] predicted {pred}, flow gives kappa={rec.kappa} lambda={rec.lam}")
            rec.checks["connectivity"] = FAIL

    if "automorphism" in checks:
        with _phase(rec, "automorphism"):
            ok = _automorphism_ok(spec, X)
        rec.checks["automorphism"] = PASS if ok else FAIL
        if not ok:
            bad.append("[automorphism] right translations are not fiber-transitive automorphisms")

    verdict = applicability(spec)
    rec.shape_exclusion = verdict.shape_exclusion
    rec.theorem_applicable = verdict.theorem_applicable
    if not verdict.theorem_applicable:
        return

    with _phase(rec, "algebraic"):
        w = theorem39_find_witness(spec, config.strict_subset)
    rec.algebraic_super_lambda = w is None
    if w is not None:
        rec.witness = w.to_dict()
        rec.witness_valid = validate_witness(spec, w, config.strict_subset)
        if not rec.witness_valid:
            bad.append(f"[superlambda] witness {rec.witness} does not validate")

    wants_oracle = checks & {"superlambda", "superatom_structure", "fragment_algebra"}
    if not wants_oracle:
        return
    if X.vertex_count > config.oracle_threshold:
        rec.oracle_status = "unconfirmed"
        return
    with _phase(rec, "oracle"):
        oracle = SubsetOracle(X, config.oracle_threshold)
        sup, first = is_super_lambda_bruteforce(X, oracle=oracle)
    rec.oracle_status = "confirmed"
    rec.oracle_super_lambda = sup
    if "superlambda" in checks:
        ok = sup == rec.algebraic_super_lambda and rec.witness_valid is not False
        rec.checks["superlambda"] = PASS if ok else FAIL
        if sup != rec.algebraic_super_lambda:
            bad.append(f"[superlambda] algebraic {rec.algebraic_super_lambda}, oracle {sup}"
                       + (f" (oracle fragment {list(first.vertices)})" if first else ""))

    if "superatom_structure" in checks:
        with _phase(rec, "superatoms"):
            atoms = find_lambda_superatoms(X, oracle=oracle)
            rec.superatom_count = sum(1 for a in atoms if a.kind == POSITIVE)
            problems = []
            for kind in (POSITIVE, NEGATIVE):
                group = [a for a in atoms if a.kind == kind]
                if not group:
                    continue
                disjoint, covers = superatoms_partition(group, X.vertex_count)
                if not disjoint:
                    problems.append(f"[superatom_structure] {kind} superatoms overlap")
                if not covers:
                    problems.append(f"[superatom_structure] {kind} superatoms do not cover V")
            for a in atoms:
                prof = verify_superatom_structure(spec, a, oracle.lam)
                problems += [f"[superatom_structure] {a.kind} superatom {list(a.vertices)}: {v}" for v in prof.violations]
        rec.checks["superatom_structure"] = FAIL if problems else PASS
        bad.extend(problems)

    if "fragment_algebra" in checks:
        with _phase(rec, "fragment_algebra"):
            n_pairs, problems = _fragment_pairs(X, oracle, config.fragment_pair_cap)
        rec.fragment_pairs_checked = n_pairs
        rec.checks["fragment_algebra"] = FAIL if problems else (PASS if n_pairs else SKIP)
        bad.extend(problems)


# -- sweeps and summaries ----------------------------------------------------


def falsified_check(message: str) -> str:
    """Check name from a ``[check] ...`` falsification message."""
    return message[1:message.index("]")]


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BICAYLEY_WORKERS", "1")))
    except ValueError:
        return 1


def _run_one(args):
    spec, config = args
    return run_instance(spec, config)


def run_sweep(config: SweepConfig, specs=None, workers: int | None = None) -> list[InstanceRecord]:
    """Records in spec order, whatever order workers finish in."""
    specs = list(enumerate_specs(config) if specs is None else specs)
    workers = workers or _worker_count()
    log.info("sweep: %d specs on %d worker(s)", len(specs), workers)
    if workers == 1 or len(specs) < 2:
        return [run_instance(s, config) for s in specs]
    with ProcessPoolExecutor(workers) as pool:
        chunk = max(1, len(specs) // (8 * workers))
        return list(pool.map(_run_one, ((s, config) for s in specs), chunksize=chunk))


CATEGORIES = ("not-strongly-connected", "cycle-excluded", "super-lambda",
              "not-super-lambda", "unconfirmed", "error")


def summarize(records) -> dict:
    records = list(records)
    counts = {c: 0 for c in CATEGORIES}
    for r in records:
        counts[r.category] += 1
    decided = counts["super-lambda"] + counts["not-super-lambda"]
    timing: dict[str, dict[str, float]] = {}
    for r in records:
        for k, v in r.timings.items():
            t = timing.setdefault(k, {"total": 0.0, "max": 0.0, "count": 0})
            t["total"] += v
            t["max"] = max(t["max"], v)
            t["count"] += 1
    for t in timing.values():
        t["mean"] = t["total"] / t["count"]
    check_counts = {c: {PASS: 0, FAIL: 0, SKIP: 0} for c in CHECKS}
    for r in records:
        for c in CHECKS:
            check_counts[c][r.checks.get(c, SKIP)] += 1
    by_check = {c: 0 for c in CHECKS}
    for r in records:
        for c in {falsified_check(f) for f in r.falsifications}:
            by_check[c] += 1
    return {
        "total": len(records),
        "categories": counts,
        "falsifications": sum(1 for r in records if r.falsifications),
        "falsifications_by_check": by_check,
        "super_lambda_fraction": counts["super-lambda"] / decided if decided else "not-applicable",
        "fragment_pairs_checked": sum(r.fragment_pairs_checked for r in records),
        "witnesses_validated": sum(1 for r in records if r.witness_valid),
        "checks": check_counts,
        "timing": timing,
    }


# -- export ------------------------------------------------------------------


def export(obj, fmt: str, path: str | Path | None = None) -> str:
    """Serialize an ``InstanceRecord`` (json/csv), a list of them (json/csv) or
    a digraph (json/dot). Writes to ``path`` when given; returns the text."""
    from .digraph import Digraph, to_json

    if isinstance(obj, Digraph):
        if fmt == "dot":
            text = to_dot(obj)
        elif fmt == "json":
            text = to_json(obj)
        else:
            raise ValueError(f"digraphs export as json or dot, not {fmt}")
    else:
        records = obj if isinstance(obj, list) else [obj]
        if fmt == "csv":
            text = records_to_csv(records)
        elif fmt == "json":
            docs = [r.to_dict() for r in records]
            text = json.dumps(docs if isinstance(obj, list) else docs[0], indent=1) + "\n"
        else:
            raise ValueError(f"records export as json or csv, not {fmt}")
    if path is not None:
        Path(path).write_text(text)
    return text


def write_sweep(records, summary: dict, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "records.csv").write_text(records_to_csv(records))
    (out / "records.json").write_text(json.dumps([r.to_dict() for r in records]) + "\n")
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n")
    return out

