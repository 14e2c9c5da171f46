"""Rules, rulebases, case records, and the rulebase JSON document format.

A rulebase document looks like::

    {
      "version": 1,
      "thresholds": {"medium_high": 0.85, "high": 0.9},
      "factors": [{"id": "threats", "levels": [{"label": "none", "degree": 0.0}, ...]}],
      "rules": [{"id": 1, "title": "...", "cluster": 1, "subcluster": "1.1",
                 "also_in": [], "terms": [{"factor": "...", "negated": false}],
                 "gaussian": {"a": 2.5, "b": 3.2, "sigma_x": 0.5, "sigma_y": 0.7,
                              "peak": 0.9, "weight": 0.08},
                 "degree_label": "High", "impact_label": "Significant"}]
    }

``thresholds`` and ``also_in`` are optional on input and always written on
output. Any other unknown key is rejected.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType
from typing import Any, Mapping

from .errors import (
    DocumentSyntaxError,
    OutOfRange,
    SchemaError,
    UnknownFactor,
    UnknownLevel,
    UnknownRule,
    ValidationError,
)
from .membership import (
    FactorId,
    GaussianParams,
    LevelMembership,
    eval_level_membership,
    is_relationship,
    monotonicity_breaks,
    normalize_label,
)

FORMAT_VERSION = 1
DEGREE_LABELS = ("Medium", "Medium-High", "High")
IMPACT_LABELS = ("Moderate", "Significant")
DEFAULT_THRESHOLDS = (0.85, 0.90)
CANONICAL_RULE_COUNT = 50
CANONICAL_WEIGHT_BAND = (0.01, 0.10)


@dataclass(frozen=True)
class RuleTerm:
    factor: FactorId
    negated: bool = False


@dataclass(frozen=True)
class Rule:
    id: int
    title: str
    cluster: int | None
    subcluster: str | None
    terms: tuple[RuleTerm, ...]
    gaussian: GaussianParams
    degree_label: str
    impact_label: str
    # secondary (cluster, subcluster) listings of the same rule
    also_in: tuple[tuple[int, str | None], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "also_in", tuple(tuple(t) for t in self.also_in))

    @property
    def gaussian_only(self) -> bool:
        return not self.terms

    def in_cluster(self, cluster: int) -> bool:
        return self.cluster == cluster or any(c == cluster for c, _ in self.also_in)


@dataclass(frozen=True)
class RuleBase:
    rules: tuple[Rule, ...]
    factor_catalogs: tuple[LevelMembership, ...]
    thresholds: tuple[float, float] = DEFAULT_THRESHOLDS
    weight_sum: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "factor_catalogs", tuple(self.factor_catalogs))
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        total = 0.0
        for rule in sorted(self.rules, key=lambda r: r.id):
            total += rule.gaussian.weight
        object.__setattr__(self, "weight_sum", total)

    def rule(self, rule_id: int) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise UnknownRule(rule_id)

    @property
    def rule_ids(self) -> list[int]:
        return sorted(r.id for r in self.rules)

    def catalog(self, factor: FactorId) -> LevelMembership:
        for cat in self.factor_catalogs:
            if cat.factor == factor:
                return cat
        raise UnknownFactor(factor)

    @property
    def factors(self) -> list[FactorId]:
        return [c.factor for c in self.factor_catalogs]

    @property
    def cluster_index(self) -> dict[tuple[int, str | None], list[int]]:
        """Rule ids grouped by primary (cluster, subcluster)."""
        index: dict[tuple[int, str | None], list[int]] = {}
        for r in sorted(self.rules, key=lambda r: r.id):
            if r.cluster is not None:
                index.setdefault((r.cluster, r.subcluster), []).append(r.id)
        return index

    def rules_in_cluster(self, cluster: int) -> list[Rule]:
        return sorted((r for r in self.rules if r.in_cluster(cluster)), key=lambda r: r.id)


@dataclass(frozen=True)
class CaseRecord:
    """One case: factor -> severity label or direct degree, or xy coordinates."""

    case_id: str
    assignments: Mapping[FactorId, str | float] = field(default_factory=dict)
    xy: tuple[float, float] | None = None

    def __post_init__(self):
        clean: dict[FactorId, str | float] = {}
        for f, v in dict(self.assignments).items():
            if isinstance(v, bool) or not isinstance(v, (str, int, float)):
                raise TypeError(f"case {self.case_id!r}: bad value for {f!r}: {v!r}")
            if not isinstance(v, str):
                v = float(v)
                if not 0.0 <= v <= 1.0:
                    raise OutOfRange(
                        f"case {self.case_id!r}: degree {v!r} for {f!r} outside [0, 1]"
                    )
            clean[f] = v
        object.__setattr__(self, "assignments", MappingProxyType(clean))
        if self.xy is not None:
            x, y = (float(c) for c in self.xy)
            object.__setattr__(self, "xy", (x, y))


# --- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    detail: str

    def __str__(self):
        return f"[{self.kind}] {self.subject}: {self.detail}"


def _check_catalog(cat: LevelMembership, canonical: bool) -> list[Violation]:
    out = []
    subj = f"factor {cat.factor}"
    if not cat.levels:
        return [Violation("empty-catalog", subj, "no levels")]
    seen = set()
    for lbl, deg in cat.levels:
        key = normalize_label(lbl)
        if key in seen:
            out.append(Violation("duplicate-label", subj, f"label {lbl!r} repeated"))
        seen.add(key)
        if not (math.isfinite(deg) and 0.0 <= deg <= 1.0):
            out.append(Violation("boundedness", subj, f"degree {deg!r} of {lbl!r} outside [0, 1]"))
    for k in monotonicity_breaks(cat):
        out.append(
            Violation(
                "monotonicity",
                subj,
                f"degree drops at rank {k}: {cat.degrees[k - 1]!r} -> {cat.degrees[k]!r}",
            )
        )
    bottom = cat.degrees[0]
    if not is_relationship(cat.factor) and bottom != 0.0:
        out.append(Violation("catalog-floor", subj, f"least-severe degree is {bottom!r}, not 0"))
    if canonical and is_relationship(cat.factor) and bottom != 0.1:
        out.append(Violation("catalog-floor", subj, f"least-severe degree is {bottom!r}, not 0.1"))
    return out


def _check_rule(rule: Rule, known: set[str], canonical: bool) -> list[Violation]:
    out = []
    subj = f"rule {rule.id}"
    if rule.id < 1 or (canonical and rule.id > CANONICAL_RULE_COUNT):
        out.append(Violation("rule-id", subj, "id out of range"))
    seen = set()
    for t in rule.terms:
        if t.factor in seen:
            out.append(Violation("duplicate-term", subj, f"factor {t.factor!r} used twice"))
        seen.add(t.factor)
        if t.factor not in known:
            out.append(Violation("unknown-factor", subj, f"no catalog for {t.factor!r}"))
    if canonical and len(rule.terms) > 2:
        out.append(Violation("term-count", subj, f"{len(rule.terms)} terms (max 2)"))
    g = rule.gaussian
    for name in ("a", "b", "sigma_x", "sigma_y", "peak", "weight"):
        if not math.isfinite(getattr(g, name)):
            out.append(Violation("non-finite", subj, f"{name} is not finite"))
    if not (g.sigma_x > 0 and g.sigma_y > 0):
        out.append(Violation("spread", subj, "spreads must be positive"))
    if not 0.0 < g.peak <= 1.0:
        out.append(Violation("boundedness", subj, f"peak {g.peak!r} outside (0, 1]"))
    if not 0.0 < g.weight <= 1.0:
        out.append(Violation("weight", subj, f"weight {g.weight!r} outside (0, 1]"))
    elif canonical:
        lo, hi = CANONICAL_WEIGHT_BAND
        if not lo <= g.weight <= hi:
            out.append(Violation("weight", subj, f"weight {g.weight!r} outside [{lo}, {hi}]"))
    if rule.degree_label not in DEGREE_LABELS:
        out.append(Violation("label", subj, f"unknown degree label {rule.degree_label!r}"))
    if rule.impact_label not in IMPACT_LABELS:
        out.append(Violation("label", subj, f"unknown impact label {rule.impact_label!r}"))
    return out


def validate_rulebase(rb: RuleBase, canonical: bool = False) -> list[Violation]:
    """Return every invariant violation in ``rb`` (empty list = valid).

    ``canonical=True`` adds the checks specific to the shipped 50-rule
    model: exact rule count, ids 1..50, at most two terms per rule, the
    0.01-0.10 weight band and the 0.1 relationship floor.
    """
    out: list[Violation] = []
    factors = [c.factor for c in rb.factor_catalogs]
    for f in sorted({f for f in factors if factors.count(f) > 1}):
        out.append(Violation("duplicate-factor", f"factor {f}", "catalog defined twice"))
    for cat in rb.factor_catalogs:
        out.extend(_check_catalog(cat, canonical))

    ids = [r.id for r in rb.rules]
    for rid in sorted({i for i in ids if ids.count(i) > 1}):
        out.append(Violation("duplicate-id", f"rule {rid}", f"id appears {ids.count(rid)} times"))
    known = set(factors)
    for rule in rb.rules:
        out.extend(_check_rule(rule, known, canonical))

    mh, hi = rb.thresholds
    if not 0.0 < mh < hi <= 1.0:
        out.append(Violation("thresholds", "thresholds", f"need 0 < {mh} < {hi} <= 1"))
    if rb.rules and not rb.weight_sum > 0:
        out.append(Violation("weight", "rulebase", "weights sum to zero"))
    if canonical and len(rb.rules) != CANONICAL_RULE_COUNT:
        out.append(
            Violation("rule-count", "rulebase", f"{len(rb.rules)} rules, expected {CANONICAL_RULE_COUNT}")
        )
    return out


# --- document parsing -------------------------------------------------------


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name} not allowed")


def _no_duplicate_keys(pairs):
    obj = {}
    for k, v in pairs:
        if k in obj:
            raise ValueError(f"duplicate key {k!r}")
        obj[k] = v
    return obj


def load_json_document(document: bytes | str, what: str = "document") -> Any:
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"{what} is not UTF-8 ({exc.reason})", f"byte {exc.start}")
    try:
        return json.loads(
            document, parse_constant=_reject_constant, object_pairs_hook=_no_duplicate_keys
        )
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    except ValueError as exc:
        raise DocumentSyntaxError(str(exc)) from None


def _keys(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise SchemaError(f"{path}.{unknown[0]}", "unknown key")
    for k in required:
        if k not in obj:
            raise SchemaError(f"{path}.{k}", "missing")


def _list(obj, path):
    if not isinstance(obj, list):
        raise SchemaError(path, "expected an array")
    return obj


def _int(obj, path):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise SchemaError(path, "expected an integer")
    return obj


def _real(obj, path):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise SchemaError(path, "expected a number")
    return float(obj)


def _str(obj, path):
    if not isinstance(obj, str):
        raise SchemaError(path, "expected a string")
    return obj


def _parse_factor(obj, path) -> LevelMembership:
    _keys(obj, path, ("id", "levels"))
    levels = []
    for k, lv in enumerate(_list(obj["levels"], f"{path}.levels")):
        lp = f"{path}.levels[{k}]"
        _keys(lv, lp, ("label", "degree"))
        levels.append((_str(lv["label"], f"{lp}.label"), _real(lv["degree"], f"{lp}.degree")))
    return LevelMembership(_str(obj["id"], f"{path}.id"), tuple(levels))


def _parse_gaussian(obj, path) -> GaussianParams:
    names = ("a", "b", "sigma_x", "sigma_y", "peak", "weight")
    _keys(obj, path, names)
    vals = {n: _real(obj[n], f"{path}.{n}") for n in names}
    for n in ("sigma_x", "sigma_y"):
        if not vals[n] > 0:
            raise SchemaError(f"{path}.{n}", "spread must be positive")
    return GaussianParams(**vals)


def _parse_rule(obj, path) -> Rule:
    _keys(
        obj,
        path,
        ("id", "title", "cluster", "subcluster", "terms", "gaussian", "degree_label", "impact_label"),
        ("also_in",),
    )
    terms = []
    for k, t in enumerate(_list(obj["terms"], f"{path}.terms")):
        tp = f"{path}.terms[{k}]"
        _keys(t, tp, ("factor", "negated"))
        if not isinstance(t["negated"], bool):
            raise SchemaError(f"{tp}.negated", "expected a boolean")
        terms.append(RuleTerm(_str(t["factor"], f"{tp}.factor"), t["negated"]))
    cluster = obj["cluster"]
    cluster = None if cluster is None else _int(cluster, f"{path}.cluster")
    sub = obj["subcluster"]
    sub = None if sub is None else _str(sub, f"{path}.subcluster")
    also = []
    for k, tag in enumerate(_list(obj.get("also_in", []), f"{path}.also_in")):
        ap = f"{path}.also_in[{k}]"
        _keys(tag, ap, ("cluster", "subcluster"))
        asub = tag["subcluster"]
        also.append(
            (_int(tag["cluster"], f"{ap}.cluster"), None if asub is None else _str(asub, f"{ap}.subcluster"))
        )
    return Rule(
        id=_int(obj["id"], f"{path}.id"),
        title=_str(obj["title"], f"{path}.title"),
        cluster=cluster,
        subcluster=sub,
        terms=tuple(terms),
        gaussian=_parse_gaussian(obj["gaussian"], f"{path}.gaussian"),
        degree_label=_str(obj["degree_label"], f"{path}.degree_label"),
        impact_label=_str(obj["impact_label"], f"{path}.impact_label"),
        also_in=tuple(also),
    )


def parse_rulebase(document: bytes | str, canonical: bool = False) -> RuleBase:
    """Parse and validate a rulebase document.

    Raises DocumentSyntaxError for malformed JSON, SchemaError for shape
    problems, and ValidationError when the result breaks an invariant.
    """
    doc = load_json_document(document, "rulebase")
    _keys(doc, "$", ("version", "factors", "rules"), ("thresholds",))
    version = _int(doc["version"], "$.version")
    if version != FORMAT_VERSION:
        raise SchemaError("$.version", f"unsupported version {version}")
    thresholds = DEFAULT_THRESHOLDS
    if "thresholds" in doc:
        _keys(doc["thresholds"], "$.thresholds", ("medium_high", "high"))
        thresholds = (
            _real(doc["thresholds"]["medium_high"], "$.thresholds.medium_high"),
            _real(doc["thresholds"]["high"], "$.thresholds.high"),
        )
    factors = [_parse_factor(f, f"$.factors[{k}]") for k, f in enumerate(_list(doc["factors"], "$.factors"))]
    rules = [_parse_rule(r, f"$.rules[{k}]") for k, r in enumerate(_list(doc["rules"], "$.rules"))]
    rb = RuleBase(tuple(rules), tuple(factors), thresholds)
    violations = validate_rulebase(rb, canonical=canonical)
    if violations:
        raise ValidationError(violations)
    return rb


def rulebase_to_dict(rb: RuleBase) -> dict:
    return {
        "version": FORMAT_VERSION,
        "thresholds": {"medium_high": rb.thresholds[0], "high": rb.thresholds[1]},
        "factors": [
            {"id": c.factor, "levels": [{"label": l, "degree": d} for l, d in c.levels]}
            for c in rb.factor_catalogs
        ],
        "rules": [
            {
                "id": r.id,
                "title": r.title,
                "cluster": r.cluster,
                "subcluster": r.subcluster,
                "also_in": [{"cluster": c, "subcluster": s} for c, s in r.also_in],
                "terms": [{"factor": t.factor, "negated": t.negated} for t in r.terms],
                "gaussian": {
                    "a": r.gaussian.a,
                    "b": r.gaussian.b,
                    "sigma_x": r.gaussian.sigma_x,
                    "sigma_y": r.gaussian.sigma_y,
                    "peak": r.gaussian.peak,
                    "weight": r.gaussian.weight,
                },
                "degree_label": r.degree_label,
                "impact_label": r.impact_label,
            }
            for r in rb.rules
        ],
    }


def serialize_rulebase(rb: RuleBase) -> bytes:
    text = json.dumps(rulebase_to_dict(rb), indent=2, ensure_ascii=False, allow_nan=False)
    return (text + "\n").encode("utf-8")


@functools.lru_cache(maxsize=1)
def canonical_rulebase() -> RuleBase:
    """The shipped 50-rule model."""
    data = resources.files("femrisk.data").joinpath("canonical_rulebase.json").read_bytes()
    return parse_rulebase(data, canonical=True)


# --- case resolution --------------------------------------------------------


def resolve_case(rb: RuleBase, case: CaseRecord) -> dict[FactorId, float]:
    """Map every catalog factor to a degree; unassigned factors get 0."""
    resolved = {f: 0.0 for f in rb.factors}
    for factor, value in case.assignments.items():
        if factor not in resolved:
            raise UnknownFactor(factor)
        if isinstance(value, str):
            resolved[factor] = eval_level_membership(rb.catalog(factor), value)
        else:
            if not 0.0 <= value <= 1.0:
                raise OutOfRange(f"degree {value!r} for {factor!r} outside [0, 1]")
            resolved[factor] = float(value)
    return resolved


__all__ = [
    "CaseRecord",
    "Rule",
    "RuleBase",
    "RuleTerm",
    "UnknownLevel",
    "Violation",
    "canonical_rulebase",
    "parse_rulebase",
    "resolve_case",
    "serialize_rulebase",
    "validate_rulebase",
]
