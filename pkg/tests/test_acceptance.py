"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line (see conftest).

The heavy sweeps are computed once per module and shared: criterion 1's
exhaustive catalog feeds criteria 2 and 3, and the criterion-3 oracle sweep
feeds criteria 4, 5 and 7.
"""

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

import pytest

from bicayley.cli import main
from bicayley.connectivity import (
    POSITIVE,
    SubsetOracle,
    analyze,
    arc_connectivity,
    find_lambda_superatoms,
    fragment_algebra_detail,
    is_super_lambda_bruteforce,
    superatoms_partition,
    vertex_connectivity,
    verify_superatom_structure,
)
from bicayley.criteria import (
    applicability,
    is_super_lambda_algebraic,
    strong_connectivity_criterion,
    theorem39_find_witness,
    validate_witness,
)
from bicayley.digraph import (
    BiCayleySpec,
    build_bicayley,
    is_arc_automorphism,
    is_strongly_connected,
    min_degrees,
    right_translation,
)
from bicayley.groups import parse_group
from bicayley.harness import SweepConfig, enumerate_specs

from strategies import bfs_strongly_connected

CATALOG = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
           "product:cyclic:2,cyclic:2", "symmetric:3"]
SAMPLED = ["cyclic:8", "dihedral:4", "product:cyclic:2,cyclic:2,cyclic:2"]
SAMPLES_PER_GROUP = 500
SAMPLE_SEED = 20240601
PAIR_CAP = 10_000
GOLDEN = Path(__file__).parent / "golden" / "worked_instances.json"


def catalog_specs():
    return list(enumerate_specs(SweepConfig(CATALOG, mode="exhaustive")))


def sampled_specs():
    cfg = SweepConfig(SAMPLED, mode="sampled", sample_count=SAMPLES_PER_GROUP, rng_seed=SAMPLE_SEED)
    return list(enumerate_specs(cfg))


@dataclass
class Criterion3Data:
    checked: int = 0
    sampled_checked: int = 0
    disagreements: list = field(default_factory=list)
    witnesses: int = 0
    invalid_witnesses: list = field(default_factory=list)
    not_super: int = 0
    superatoms_checked: int = 0
    superatom_problems: list = field(default_factory=list)
    pairs: int = 0
    pair_failures: list = field(default_factory=list)
    seconds: float = 0.0


@pytest.fixture(scope="module")
def catalog():
    t = time.perf_counter()
    specs = catalog_specs()
    return specs, time.perf_counter() - t


@pytest.fixture(scope="module")
def criterion3(catalog):
    specs, _ = catalog
    data = Criterion3Data()
    start = time.perf_counter()
    sampled = sampled_specs()
    for origin, spec in itertools.chain(zip(itertools.repeat("catalog"), specs),
                                        zip(itertools.repeat("sampled"), sampled)):
        if not applicability(spec).theorem_applicable:
            continue
        X = build_bicayley(spec)
        assert X.vertex_count <= 20
        data.checked += 1
        data.sampled_checked += origin == "sampled"
        w = theorem39_find_witness(spec)
        oracle = SubsetOracle(X)
        sup, frag = is_super_lambda_bruteforce(X, oracle=oracle)
        if sup != (w is None):
            data.disagreements.append((str(spec), w is None, sup))
        if w is not None:
            data.witnesses += 1
            if not validate_witness(spec, w):
                data.invalid_witnesses.append((str(spec), w.to_dict()))
        if not sup:
            data.not_super += 1
            atoms = [a for a in find_lambda_superatoms(X, oracle=oracle) if a.kind == POSITIVE]
            disjoint, _ = superatoms_partition(atoms, X.vertex_count)
            if not atoms or not disjoint:
                data.superatom_problems.append((str(spec), "superatoms missing or overlapping"))
            for a in atoms:
                data.superatoms_checked += 1
                prof = verify_superatom_structure(spec, a, oracle.lam)
                if prof.violations:
                    data.superatom_problems.append((str(spec), list(a.vertices), prof.violations))
        if data.pairs < PAIR_CAP:
            frags = oracle.fragments(POSITIVE)
            for a, b in itertools.combinations(frags, 2):
                if data.pairs >= PAIR_CAP:
                    break
                detail = fragment_algebra_detail(X, a, b, oracle)
                if detail is None:
                    continue
                data.pairs += 1
                failed = [k for k, ok in detail.items() if not ok]
                if failed:
                    balanced = len(spec.T0) == len(spec.T1)
                    data.pair_failures.append((str(spec), a.vertices, b.vertices, failed, balanced))
    data.seconds = time.perf_counter() - start
    return data


def _report(record_property, detail):
    record_property("detail", detail)
    print(detail)


@pytest.mark.criterion(1, "strong-connectivity criterion agrees with BFS on the exhaustive catalog")
def test_criterion_1_strong_connectivity(catalog, record_property):
    specs, setup = catalog
    t = time.perf_counter()
    mismatches = []
    for spec in specs:
        X = build_bicayley(spec)
        bfs = bfs_strongly_connected(X)
        if strong_connectivity_criterion(spec) != bfs or is_strongly_connected(X) != bfs:
            mismatches.append(str(spec))
    elapsed = setup + time.perf_counter() - t
    _report(record_property, f"{len(specs)} specs, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert len(specs) == sum((2 ** parse_group(d).order - 1) ** 2 for d in CATALOG)
    assert mismatches == []
    assert elapsed < 30


@pytest.mark.criterion(2, "flow kappa and lambda equal min(|T0|,|T1|) on every strongly connected instance")
def test_criterion_2_connectivities(catalog, record_property):
    specs, _ = catalog
    t = time.perf_counter()
    bad, count = [], 0
    for spec in specs:
        X = build_bicayley(spec)
        if not is_strongly_connected(X):
            continue
        count += 1
        d = min(len(spec.T0), len(spec.T1))
        k, lam = vertex_connectivity(X), arc_connectivity(X)
        if (k, lam) != (d, d):
            bad.append((str(spec), k, lam, d))
    elapsed = time.perf_counter() - t
    _report(record_property, f"{count} strongly connected instances, {len(bad)} mismatches, {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 120


@pytest.mark.criterion(3, "algebraic super-lambda verdict equals the exhaustive oracle")
def test_criterion_3_superlambda_equivalence(criterion3, record_property):
    d = criterion3
    _report(record_property,
            f"{d.checked} applicable instances ({d.sampled_checked} sampled), "
            f"{len(d.disagreements)} disagreements, {d.seconds:.1f}s")
    assert d.sampled_checked > 0
    assert d.disagreements == []
    assert d.seconds < 600


@pytest.mark.criterion(4, "every witness validates constructively")
def test_criterion_4_witnesses(criterion3, record_property):
    d = criterion3
    _report(record_property, f"{d.witnesses} witnesses, {len(d.invalid_witnesses)} invalid")
    assert d.witnesses > 0
    assert d.invalid_witnesses == []


@pytest.mark.criterion(5, "positive lambda-superatoms have the predicted coset structure")
def test_criterion_5_superatom_structure(criterion3, record_property):
    d = criterion3
    _report(record_property,
            f"{d.not_super} non-super-lambda instances, {d.superatoms_checked} superatoms, "
            f"{len(d.superatom_problems)} problems")
    assert d.superatoms_checked > 0
    assert d.superatom_problems == []


@pytest.mark.criterion(6, "right translations are automorphisms acting transitively on each fiber")
def test_criterion_6_automorphisms(record_property):
    t = time.perf_counter()
    rng = random.Random(6)
    groups = [parse_group(d) for d in CATALOG + SAMPLED + ["dihedral:6", "symmetric:4"]]
    bad = []
    for _ in range(100):
        G = rng.choice(groups)
        n = G.order
        T0 = [g for g in range(n) if rng.random() < 0.5] or [0]
        T1 = [g for g in range(n) if rng.random() < 0.5] or [0]
        spec = BiCayleySpec.of(G, T0, T1)
        X = build_bicayley(spec)
        perms = [right_translation(spec, a) for a in range(n)]
        if not all(is_arc_automorphism(X, p) for p in perms):
            bad.append(str(spec))
            continue
        for i in (0, 1):
            for g1 in range(n):
                images = {p[spec.vertex(g1, i)] for p in perms}
                if images != {spec.vertex(g, i) for g in range(n)}:
                    bad.append(str(spec))
    elapsed = time.perf_counter() - t
    _report(record_property, f"100 instances, {len(bad)} failures, {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 10


@pytest.mark.criterion(7, "meet, join and both differences of crossing positive fragments are fragments")
def test_criterion_7_fragment_algebra(criterion3, record_property):
    d = criterion3
    fails = d.pair_failures
    on_balanced = sum(1 for f in fails if f[4])
    kinds = sorted({k for f in fails for k in f[3]})
    detail = (f"{d.pairs} pairs, {len(fails)} failing; failing sets {kinds or 'none'}; "
              f"{on_balanced} failures on balanced instances")
    if fails:
        spec, a, b, failed, _ = fails[0]
        detail += f"; first: {spec} A={list(a)} B={list(b)} {failed}"
    _report(record_property, detail)
    assert d.pairs > 0
    assert not fails, detail


@pytest.mark.criterion(8, "worked instances match the oracle-generated golden file")
def test_criterion_8_golden_instances(record_property):
    golden = json.loads(GOLDEN.read_text())
    wrong = []
    for g in golden:
        spec = BiCayleySpec.of(parse_group(g["group"]), g["T0"], g["T1"])
        X = build_bicayley(spec)
        verdict = applicability(spec)
        got = {
            "strongly_connected": verdict.strongly_connected,
            "shape_exclusion": verdict.shape_exclusion,
            "kappa": None, "lambda": None, "delta": min_degrees(X)[2],
            "super_lambda": None, "oracle_fragment": None, "witness": None,
        }
        if verdict.strongly_connected:
            rep = analyze(X)
            got.update(kappa=rep.kappa, **{"lambda": rep.lam})
        if verdict.theorem_applicable:
            got["super_lambda"] = is_super_lambda_algebraic(spec)
            w = theorem39_find_witness(spec)
            if w is not None:
                got["witness"] = w.to_dict()
                got["oracle_fragment"] = list(w.predicted_superatom)
        expected = {k: g[k] for k in got}
        if got != expected:
            wrong.append((g["group"], g["T0"], g["T1"], got, expected))
    _report(record_property, f"{len(golden)} instances, {len(wrong)} mismatches")
    assert len(golden) == 5
    assert wrong == []


@pytest.mark.criterion(9, "repeated seeded sweeps give byte-identical CSV")
def test_criterion_9_determinism(tmp_path, capsys, record_property):
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run
        code = main(["sweep", "--group", "dihedral:4", "--group", "cyclic:5", "--mode", "sampled",
                     "--samples", "40", "--seed", "99", "--out", str(out)])
        assert code in (0, 2)
        outputs.append((out / "records.csv").read_bytes())
    capsys.readouterr()
    same = outputs[0] == outputs[1]
    rows = len(outputs[0].splitlines()) - 1
    _report(record_property, f"{rows} rows, identical={same}")
    assert same
