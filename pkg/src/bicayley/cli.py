"""Command line entry point: ``bicayley <command> ...``.

Exit status: 0 clean, 1 usage or resource error, 2 falsification detected.
Settings come from flags, then ``--config`` (a JSON object of SweepConfig
fields), then defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .connectivity import (
    ConnectivityError,
    OracleLimitError,
    analyze,
    is_super_lambda_bruteforce,
)
from .criteria import (
    CriteriaError,
    applicability,
    is_super_lambda_algebraic,
    predict_connectivities,
    theorem39_find_witness,
    validate_witness,
)
from .digraph import BiCayleySpec, build_bicayley, is_strongly_connected
from .groups import GroupError, parse_group
from .harness import CHECKS, SweepConfig, export, run_instance, run_sweep, summarize, write_sweep

EXIT_OK, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ids(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _add_common(p: argparse.ArgumentParser, single: bool) -> None:
    p.add_argument("--group", action="append", help="group descriptor, e.g. cyclic:6 (repeatable)")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--oracle-threshold", type=int)
    p.add_argument("--strict-subset", action="store_true", default=None,
                   help="read the proper-subset containments of the theorem as strict")
    p.add_argument("--out")
    if single:
        p.add_argument("--t0", required=True, help="comma-separated element ids")
        p.add_argument("--t1", required=True, help="comma-separated element ids")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicayley", description="Bi-Cayley digraph connectivity toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build BD(G, T0, T1) and print it")
    _add_common(p, single=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("analyze", help="connectivity report for one instance")
    _add_common(p, single=True)

    p = sub.add_parser("check-superlambda", help="algebraic vs exhaustive super-lambda verdict")
    _add_common(p, single=True)

    p = sub.add_parser("sweep", help="run the check pipeline over many instances")
    _add_common(p, single=False)
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--format", choices=("json", "csv"), help="also print records to stdout")
    p.add_argument("--force", action="store_true", default=None,
                   help="allow exhaustive sweeps over groups of order > 8")

    p = sub.add_parser("export", help="write one instance record or its digraph")
    _add_common(p, single=True)
    p.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    return parser


def _config(args) -> SweepConfig:
    doc: dict = {}
    if args.config:
        doc = json.loads(Path(args.config).read_text())
        if not isinstance(doc, dict):
            raise UsageError("config file must hold a JSON object")
    flags = {
        "group_descriptors": args.group,
        "oracle_threshold": args.oracle_threshold,
        "strict_subset": args.strict_subset,
        "output_dir": args.out,
        "mode": getattr(args, "mode", None),
        "sample_count": getattr(args, "samples", None),
        "rng_seed": getattr(args, "seed", None),
        "force": getattr(args, "force", None),
    }
    checks = getattr(args, "checks", None)
    if checks:
        flags["checks"] = [c.strip() for c in checks.split(",") if c.strip()]
    doc.update({k: v for k, v in flags.items() if v is not None})
    try:
        return SweepConfig.from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _single_spec(args, config: SweepConfig) -> BiCayleySpec:
    if len(config.group_descriptors) != 1:
        raise UsageError("this command takes exactly one --group")
    G = parse_group(config.group_descriptors[0])
    return BiCayleySpec.of(G, _ids(args.t0), _ids(args.t1))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args, config) -> int:
    spec = _single_spec(args, config)
    _emit(export(build_bicayley(spec), args.format), args.out)
    return EXIT_OK


def cmd_analyze(args, config) -> int:
    spec = _single_spec(args, config)
    X = build_bicayley(spec)
    verdict = applicability(spec)
    doc = {
        "spec": str(spec),
        "strongly_connected": verdict.strongly_connected,
        "shape_exclusion": verdict.shape_exclusion,
        "theorem_applicable": verdict.theorem_applicable,
        "predicted": predict_connectivities(spec),
        "report": None,
        "witness": None,
    }
    if is_strongly_connected(X):
        algebraic = None
        if verdict.theorem_applicable:
            w = theorem39_find_witness(spec, config.strict_subset)
            algebraic = w is None
            doc["witness"] = None if w is None else w.to_dict()
        doc["report"] = analyze(X, config.oracle_threshold, algebraic).to_dict()
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_check_superlambda(args, config) -> int:
    spec = _single_spec(args, config)
    X = build_bicayley(spec)
    w = theorem39_find_witness(spec, config.strict_subset)
    doc = {
        "spec": str(spec),
        "algebraic_super_lambda": w is None,
        "witness": None if w is None else w.to_dict(),
        "witness_valid": None if w is None else validate_witness(spec, w, config.strict_subset),
        "oracle_super_lambda": None,
        "oracle_fragment": None,
    }
    status = EXIT_OK
    if X.vertex_count <= config.oracle_threshold:
        sup, frag = is_super_lambda_bruteforce(X, config.oracle_threshold)
        doc["oracle_super_lambda"] = sup
        doc["oracle_fragment"] = None if frag is None else list(frag.vertices)
        if sup != is_super_lambda_algebraic(spec, config.strict_subset):
            status = EXIT_FALSIFIED
    if doc["witness_valid"] is False:
        status = EXIT_FALSIFIED
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return status


def cmd_sweep(args, config) -> int:
    records = run_sweep(config)
    summary = summarize(records) if records else {"total": 0, "falsifications": 0}
    out = write_sweep(records, summary, config.output_dir)
    if args.format:
        sys.stdout.write(export(records, args.format))
    print(json.dumps({k: summary[k] for k in ("total", "categories", "falsifications",
                                              "super_lambda_fraction") if k in summary}))
    print(f"wrote {out}/records.csv, records.json, summary.json", file=sys.stderr)
    return EXIT_FALSIFIED if summary["falsifications"] else EXIT_OK


def cmd_export(args, config) -> int:
    spec = _single_spec(args, config)
    if args.format == "dot":
        text = export(build_bicayley(spec), "dot")
        falsified = False
    else:
        rec = run_instance(spec, config)
        text = export(rec, args.format)
        falsified = bool(rec.falsifications)
    _emit(text, args.out)
    return EXIT_FALSIFIED if falsified else EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "check-superlambda": cmd_check_superlambda,
    "sweep": cmd_sweep,
    "export": cmd_export,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except (UsageError, GroupError, CriteriaError, ConnectivityError, OracleLimitError,
            OSError, ValueError) as exc:
        print(f"bicayley: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
