"""Command-line driver.

    femrisk score --cases cases.csv [--rulebase rb.json] [--aggregator weighted|min]
                  [--format json|csv] [--out report.json]
    femrisk surface --rule 1|composite [--xmin 0 --xmax 6 --ymin 0 --ymax 6 --resolution 101]
                    [--format json|csv] --out surface.json
    femrisk validate [--rulebase rb.json]
    femrisk rules [--rulebase rb.json] [--cluster 1]

Exit codes: 0 ok, 1 validation/axiom failure, 2 usage error, 3 input data error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    CaseDataError,
    DuplicateCaseId,
    FemriskError,
    OutOfRange,
    UnknownFactor,
    UnknownLevel,
    ValidationError,
)
from .inference import Assessment, check_axioms, evaluate_case
from .membership import eval_level_membership
from .rulebase import (
    DEGREE_LABELS,
    CaseRecord,
    RuleBase,
    canonical_rulebase,
    load_json_document,
    parse_rulebase,
    serialize_rulebase,
    validate_rulebase,
)
from .surface import COMPOSITE, GridSpec, eval_surface, export_surface

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_DATA = 3

XY_COLUMNS = ("x", "y")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CaseFile:
    cases: tuple[CaseRecord, ...]


# --- case ingestion ---------------------------------------------------------


def _check_value(rb: RuleBase, factor: str, value, where: str):
    """Validate one assignment; returns the value to store."""
    if factor not in rb.factors:
        raise UnknownFactor(factor) from None
    if isinstance(value, str):
        try:
            eval_level_membership(rb.catalog(factor), value)
        except UnknownLevel as exc:
            raise CaseDataError(str(exc), where) from None
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CaseDataError(f"expected a label or a degree, got {value!r}", where)
    value = float(value)
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise CaseDataError(f"degree {value!r} outside [0, 1]", where)
    return value


def _parse_cell(cell: str):
    try:
        return float(cell)
    except ValueError:
        return cell


def _load_csv(text: str, rb: RuleBase, path: str) -> CaseFile:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        return CaseFile(())
    except csv.Error as exc:
        raise CaseDataError(str(exc), f"{path}:1") from None
    header = [h.strip() for h in header]
    if not header or header[0] != "case_id":
        raise CaseDataError("first column must be case_id", f"{path}:1")
    for k, col in enumerate(header):
        if col in header[:k]:
            raise CaseDataError(f"duplicate column {col!r}", f"{path}:1")
    columns = header[1:]
    for col in columns:
        if col not in XY_COLUMNS and col not in rb.factors:
            raise CaseDataError(str(UnknownFactor(col)), f"{path}:1 column {col!r}")
    has_xy = [c for c in XY_COLUMNS if c in columns]
    if has_xy and len(has_xy) != 2:
        raise CaseDataError("x and y columns must appear together", f"{path}:1")

    cases, seen = [], set()
    try:
        for row in reader:
            line = reader.line_num
            if not any(c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise CaseDataError(f"expected {len(header)} fields, got {len(row)}", f"{path}:{line}")
            case_id = row[0].strip()
            if not case_id:
                raise CaseDataError("empty case_id", f"{path}:{line}")
            if case_id in seen:
                raise DuplicateCaseId(f"duplicate case id {case_id!r}", f"{path}:{line}")
            seen.add(case_id)
            assignments, xy = {}, {}
            for col, cell in zip(columns, row[1:]):
                cell = cell.strip()
                if not cell:
                    continue
                where = f"{path}:{line} column {col!r}"
                value = _parse_cell(cell)
                if col in XY_COLUMNS:
                    if isinstance(value, str) or not math.isfinite(value):
                        raise CaseDataError(f"coordinate must be a finite number, got {cell!r}", where)
                    xy[col] = value
                else:
                    assignments[col] = _check_value(rb, col, value, where)
            cases.append(_make_case(case_id, assignments, xy, f"{path}:{line}"))
    except csv.Error as exc:
        raise CaseDataError(str(exc), f"{path}:{reader.line_num}") from None
    return CaseFile(tuple(cases))


def _make_case(case_id, assignments, xy, where) -> CaseRecord:
    if xy:
        if len(xy) != 2:
            raise CaseDataError("both x and y are required for Gaussian mode", where)
        if assignments:
            raise CaseDataError("case mixes xy coordinates with factor assignments", where)
        return CaseRecord(case_id, {}, (xy["x"], xy["y"]))
    return CaseRecord(case_id, assignments)


def _load_json(text: str, rb: RuleBase, path: str) -> CaseFile:
    try:
        doc = load_json_document(text, "case file")
    except FemriskError as exc:
        raise CaseDataError(str(exc), path) from None
    if isinstance(doc, dict) and set(doc) == {"cases"}:
        doc = doc["cases"]
    if not isinstance(doc, list):
        raise CaseDataError("expected a list of cases or {\"cases\": [...]}", path)
    cases, seen = [], set()
    for k, obj in enumerate(doc):
        where = f"{path}: cases[{k}]"
        if not isinstance(obj, dict) or "case_id" not in obj:
            raise CaseDataError("each case must be an object with case_id", where)
        extra = set(obj) - {"case_id", "assignments", "xy"}
        if extra:
            raise CaseDataError(f"unknown key {sorted(extra)[0]!r}", where)
        case_id = obj["case_id"]
        if not isinstance(case_id, str) or not case_id:
            raise CaseDataError("case_id must be a non-empty string", where)
        if case_id in seen:
            raise DuplicateCaseId(f"duplicate case id {case_id!r}", where)
        seen.add(case_id)
        raw = obj.get("assignments", {})
        if not isinstance(raw, dict):
            raise CaseDataError("assignments must be an object", where)
        assignments = {}
        for factor, value in raw.items():
            fwhere = f"{where}.assignments.{factor}"
            if factor not in rb.factors:
                raise CaseDataError(str(UnknownFactor(factor)), fwhere)
            assignments[factor] = _check_value(rb, factor, value, fwhere)
        xy = {}
        if obj.get("xy") is not None:
            pair = obj["xy"]
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in pair)
                or not all(math.isfinite(v) for v in pair)
            ):
                raise CaseDataError("xy must be a pair of finite numbers", f"{where}.xy")
            xy = {"x": float(pair[0]), "y": float(pair[1])}
        cases.append(_make_case(case_id, assignments, xy, where))
    return CaseFile(tuple(cases))


def load_cases(path: str | os.PathLike, format: str | None = None, rb: RuleBase | None = None) -> CaseFile:
    """Read a CSV or JSON case file, validating against ``rb``.

    ``format`` defaults to the file extension.
    """
    rb = rb or canonical_rulebase()
    path = str(path)
    if format is None:
        format = "json" if path.lower().endswith(".json") else "csv"
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CaseDataError(exc.strerror or str(exc), path) from None
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        raise CaseDataError("file is not valid UTF-8", path) from None
    if format == "csv":
        return _load_csv(text, rb, path)
    if format == "json":
        return _load_json(text, rb, path)
    raise UsageError(f"unknown case format {format!r}")


# --- reports ----------------------------------------------------------------


def fingerprint(rb: RuleBase) -> str:
    return "sha256:" + hashlib.sha256(serialize_rulebase(rb)).hexdigest()


def _assessment_dict(a: Assessment) -> dict:
    d = {
        "case_id": a.case_id,
        "mode": a.mode,
        "score": a.score,
        "category": a.category,
        "impact": a.impact,
        "mu_f": a.mu_f,
        "mu_total_raw": a.mu_total_raw,
        "mu_total_normalized": a.mu_total_normalized,
        "activations": {str(k): v for k, v in a.activations.items()},
    }
    if a.notes:
        d["notes"] = list(a.notes)
    return d


def score_report(rb: RuleBase, cases: CaseFile, aggregator: str = "weighted") -> dict:
    rows = [evaluate_case(rb, c, aggregator) for c in cases.cases]
    counts = Counter(a.category for a in rows)
    return {
        "rulebase_fingerprint": fingerprint(rb),
        "aggregator": aggregator,
        "case_count": len(rows),
        "summary": {label: counts.get(label, 0) for label in DEGREE_LABELS},
        "cases": [_assessment_dict(a) for a in rows],
    }


def render_report(report: dict, rb: RuleBase, format: str) -> bytes:
    if format == "json":
        return (json.dumps(report, indent=2, allow_nan=False) + "\n").encode("utf-8")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rule_ids = rb.rule_ids
    w.writerow(
        ["case_id", "mode", "score", "category", "impact", "mu_f", "mu_total_raw", "mu_total_normalized"]
        + [f"rule_{r}" for r in rule_ids]
    )
    for row in report["cases"]:
        w.writerow(
            [row["case_id"], row["mode"]]
            + [repr(row["score"]), row["category"], row["impact"]]
            + [repr(row[k]) for k in ("mu_f", "mu_total_raw", "mu_total_normalized")]
            + [repr(row["activations"][str(r)]) for r in rule_ids]
        )
    return buf.getvalue().encode("utf-8")


def _write_output(data: bytes, out: str | None, stdout):
    if out is None:
        stdout.buffer.write(data) if hasattr(stdout, "buffer") else stdout.write(data.decode("utf-8"))
        stdout.flush()
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- commands ---------------------------------------------------------------


def _load_rulebase(path: str | None) -> RuleBase:
    if path is None:
        return canonical_rulebase()
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CaseDataError(exc.strerror or str(exc), path) from None
    return parse_rulebase(raw)


def cmd_score(args, stdout, stderr) -> int:
    rb = _load_rulebase(args.rulebase)
    cases = load_cases(args.cases, args.case_format, rb)
    report = score_report(rb, cases, args.aggregator)
    _write_output(render_report(report, rb, args.format), args.out, stdout)
    return EXIT_OK


def cmd_surface(args, stdout, stderr) -> int:
    rb = _load_rulebase(args.rulebase)
    if args.rule == COMPOSITE:
        subject = COMPOSITE
    else:
        try:
            subject = int(args.rule)
        except ValueError:
            raise UsageError(f"--rule must be a rule id or 'composite', got {args.rule!r}") from None
        if subject not in rb.rule_ids:
            raise UsageError(f"unknown rule {subject}")
    try:
        spec = GridSpec(args.xmin, args.xmax, args.ymin, args.ymax, args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = eval_surface(rb, subject, spec)
    _write_output(export_surface(data, args.format), args.out, stdout)
    return EXIT_OK


def cmd_validate(args, stdout, stderr) -> int:
    try:
        rb = _load_rulebase(args.rulebase)
    except ValidationError as exc:
        for v in exc.violations:
            print(v, file=stdout)
        print(f"INVALID: {len(exc.violations)} violation(s)", file=stderr)
        return EXIT_INVALID
    violations = validate_rulebase(rb, canonical=args.rulebase is None)
    report = check_axioms(rb)
    problems = violations + report.violations
    for v in problems:
        print(v, file=stdout)
    if problems:
        print(f"INVALID: {len(problems)} violation(s)", file=stderr)
        return EXIT_INVALID
    print(f"OK: {len(rb.rules)} rules, {len(rb.factor_catalogs)} factors; axioms: {report.summary()}", file=stdout)
    return EXIT_OK


def cmd_rules(args, stdout, stderr) -> int:
    rb = _load_rulebase(args.rulebase)
    rules = rb.rules_in_cluster(args.cluster) if args.cluster is not None else sorted(rb.rules, key=lambda r: r.id)
    w = csv.writer(stdout, delimiter="\t", lineterminator="\n")
    w.writerow(["id", "title", "cluster", "subcluster", "degree", "weight"])
    for r in rules:
        w.writerow(
            [r.id, r.title, "" if r.cluster is None else r.cluster, r.subcluster or "", r.degree_label, repr(r.gaussian.weight)]
        )
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="femrisk", description="Fuzzy femicide-risk model: scoring, surfaces, validation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("score", help="score a case file")
    s.add_argument("--cases", required=True)
    s.add_argument("--case-format", choices=("csv", "json"), default=None, help="default: from extension")
    s.add_argument("--rulebase")
    s.add_argument("--aggregator", choices=("weighted", "min"), default="weighted")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_score)

    g = sub.add_parser("surface", help="export a rule or composite surface")
    g.add_argument("--rule", required=True, help="rule id or 'composite'")
    g.add_argument("--rulebase")
    g.add_argument("--xmin", type=float, default=0.0)
    g.add_argument("--xmax", type=float, default=6.0)
    g.add_argument("--ymin", type=float, default=0.0)
    g.add_argument("--ymax", type=float, default=6.0)
    g.add_argument("--resolution", type=int, default=101)
    g.add_argument("--format", choices=("csv", "json"), default="json")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_surface)

    v = sub.add_parser("validate", help="validate a rulebase and check the axioms")
    v.add_argument("--rulebase")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("rules", help="list rules")
    r.add_argument("--rulebase")
    r.add_argument("--cluster", type=int)
    r.set_defaults(func=cmd_rules)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, stdout, stderr)
    except UsageError as exc:
        print(f"femrisk: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"femrisk: {exc}", file=stderr)
        return EXIT_INVALID
    except (FemriskError, OutOfRange) as exc:
        print(f"femrisk: input error: {exc}", file=stderr)
        return EXIT_DATA


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
