"""Rule activation, min composition, weighted aggregation and classification.

A case is scored in one of two modes. In symbolic mode, severity labels
and degrees are resolved through the factor catalogs and each rule fires at
the minimum of its (possibly complemented) terms. In Gaussian mode the case
gives explicit ``(x, y)`` coordinates and each rule fires at its Gaussian
surface height there. Both modes report the min composite ``mu_f`` and the
weighted composite ``mu_total``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyInput, MissingActivation, MixedModeError, OutOfRange
from .membership import FactorId, eval_gaussian, monotonicity_breaks
from .rulebase import (
    DEFAULT_THRESHOLDS,
    CaseRecord,
    Rule,
    RuleBase,
    Violation,
    resolve_case,
)
from .surface import DEFAULT_GRID, GridSpec, composite_grid, gaussian_grid

SYMBOLIC = "symbolic"
GAUSSIAN = "gaussian"
AGGREGATORS = ("weighted", "min")


def term_value(negated: bool, degree: float) -> float:
    return 1.0 - degree if negated else degree


def activation(rule: Rule, resolved: Mapping[FactorId, float]) -> float:
    if not rule.terms:
        return 0.0
    return min(term_value(t.negated, resolved[t.factor]) for t in rule.terms)


def min_composite(values: Iterable[float]) -> float:
    values = list(values)
    if not values:
        raise EmptyInput("min composition over an empty set")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise OutOfRange(f"degree {v!r} outside [0, 1]")
    return min(values)


def aggregate_weighted(
    rb: RuleBase, activations: Mapping[int, float], normalized: bool = True
) -> float:
    """``sum(w_R * mu_R)`` in ascending rule-id order, optionally over ``sum(w_R)``."""
    total = 0.0
    for rule in sorted(rb.rules, key=lambda r: r.id):
        if rule.id not in activations:
            raise MissingActivation(rule.id)
        total += rule.gaussian.weight * activations[rule.id]
    if not normalized:
        return total
    if rb.weight_sum <= 0:
        return 0.0
    return min(total / rb.weight_sum, 1.0)


def classify(score: float, thresholds: Sequence[float] = DEFAULT_THRESHOLDS) -> tuple[str, str]:
    """Map a [0, 1] score to ``(degree of risk, expected impact)``."""
    if not 0.0 <= score <= 1.0:
        raise OutOfRange(f"score {score!r} outside [0, 1]")
    medium_high, high = thresholds
    if score >= high:
        return "High", "Significant"
    if score >= medium_high:
        return "Medium-High", "Moderate"
    return "Medium", "Moderate"


@dataclass(frozen=True)
class Assessment:
    case_id: str
    mode: str
    activations: dict[int, float]
    mu_f: float
    mu_total_raw: float
    mu_total_normalized: float
    aggregator: str
    score: float
    category: str
    impact: str
    notes: tuple[str, ...] = ()


def evaluate_case(rb: RuleBase, case: CaseRecord, aggregator: str = "weighted") -> Assessment:
    if aggregator not in AGGREGATORS:
        raise ValueError(f"aggregator must be one of {AGGREGATORS}, got {aggregator!r}")
    rules = sorted(rb.rules, key=lambda r: r.id)
    notes = []
    if case.xy is not None:
        if case.assignments:
            raise MixedModeError(f"case {case.case_id!r} gives both xy and factor assignments")
        mode = GAUSSIAN
        x, y = case.xy
        acts = {r.id: eval_gaussian(r.gaussian, x, y) for r in rules}
        considered = list(acts.values())
    else:
        mode = SYMBOLIC
        resolved = resolve_case(rb, case)
        acts = {r.id: activation(r, resolved) for r in rules}
        considered = [acts[r.id] for r in rules if r.terms]
    if considered:
        mu_f = min_composite(considered)
    else:
        mu_f = 0.0
        notes.append("mu_f undefined: no rules eligible for min composition; reported as 0")
    raw = aggregate_weighted(rb, acts, normalized=False)
    norm = aggregate_weighted(rb, acts, normalized=True)
    score = norm if aggregator == "weighted" else mu_f
    category, impact = classify(score, rb.thresholds)
    return Assessment(
        case_id=case.case_id,
        mode=mode,
        activations=acts,
        mu_f=mu_f,
        mu_total_raw=raw,
        mu_total_normalized=norm,
        aggregator=aggregator,
        score=score,
        category=category,
        impact=impact,
        notes=tuple(notes),
    )


# --- axiom verification -----------------------------------------------------


@dataclass
class AxiomReport:
    violations: list[Violation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def _count(self, axiom: str, n: int = 1):
        self.checked[axiom] = self.checked.get(axiom, 0) + n

    def summary(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        return f"{len(self.violations)} violation(s); checks: {parts}"


def _bounds(report: AxiomReport, subject: str, value: float):
    report._count("positivity")
    report._count("boundedness")
    if not value >= 0.0:
        report.violations.append(Violation("positivity", subject, f"value {value!r} < 0"))
    elif value > 1.0:
        report.violations.append(Violation("boundedness", subject, f"value {value!r} > 1"))


def _array_bounds(report: AxiomReport, subject: str, values: np.ndarray, spec: GridSpec | None):
    report._count("positivity", values.size)
    report._count("boundedness", values.size)
    for axiom, bad in (("positivity", ~(values >= 0.0)), ("boundedness", values > 1.0)):
        if bad.any():
            i, j = np.argwhere(bad)[0]
            where = f" at {spec.point(i, j)}" if spec is not None else ""
            report.violations.append(
                Violation(axiom, subject, f"{int(bad.sum())} grid value(s) out of range, e.g. {values[i, j]!r}{where}")
            )


def _check_catalogs(rb: RuleBase, report: AxiomReport):
    for cat in rb.factor_catalogs:
        for lbl, deg in cat.levels:
            _bounds(report, f"factor {cat.factor} level {lbl!r}", deg)
        report._count("monotonicity")
        for k in monotonicity_breaks(cat):
            report.violations.append(
                Violation("monotonicity", f"factor {cat.factor}", f"degree decreases at rank {k}")
            )


def _check_grid(rb: RuleBase, spec: GridSpec, report: AxiomReport):
    xs, ys = spec.xs, spec.ys
    rules = sorted(rb.rules, key=lambda r: r.id)
    grids = []
    for r in rules:
        # analytic supremum of the surface is its peak
        _bounds(report, f"rule {r.id} peak", r.gaussian.peak)
        g = gaussian_grid(r.gaussian, xs, ys)
        _array_bounds(report, f"rule {r.id} surface", g, spec)
        grids.append(g)
    if grids:
        stacked = np.stack(grids)
        mu_f = stacked.min(axis=0)
        report._count("min-dominance", stacked.size)
        if np.any(mu_f[None, :, :] > stacked):
            report.violations.append(Violation("min-dominance", "gaussian mu_f", "exceeds a rule activation"))
        _array_bounds(report, "composite surface", composite_grid(rb, xs, ys), spec)


def _check_case(rb: RuleBase, case: CaseRecord, report: AxiomReport):
    resolved = resolve_case(rb, case)
    for f, d in resolved.items():
        _bounds(report, f"case {case.case_id} factor {f}", d)
    assessment = evaluate_case(rb, case)
    for r in rb.rules:
        a = assessment.activations[r.id]
        _bounds(report, f"case {case.case_id} rule {r.id}", a)
        for t in r.terms:
            report._count("min-dominance")
            bound = 1.0 - resolved[t.factor] if t.negated else resolved[t.factor]
            if a > bound:
                report.violations.append(
                    Violation(
                        "min-dominance",
                        f"case {case.case_id} rule {r.id}",
                        f"activation {a!r} exceeds term {t.factor} value {bound!r}",
                    )
                )
        if r.terms:
            report._count("min-dominance")
            if assessment.mu_f > a:
                report.violations.append(
                    Violation("min-dominance", f"case {case.case_id}", f"mu_f exceeds rule {r.id}")
                )
    _bounds(report, f"case {case.case_id} mu_f", assessment.mu_f)
    _bounds(report, f"case {case.case_id} mu_total", assessment.mu_total_normalized)


def check_axioms(rb: RuleBase, sample: GridSpec | Iterable[CaseRecord] = DEFAULT_GRID) -> AxiomReport:
    """Recheck positivity, boundedness, monotonicity and min-dominance.

    ``sample`` is either a grid (Gaussian surfaces are evaluated at every
    node) or a collection of cases (scored symbolically). Catalog tables
    are always checked.
    """
    report = AxiomReport()
    _check_catalogs(rb, report)
    if isinstance(sample, GridSpec):
        _check_grid(rb, sample, report)
    else:
        cases = list(sample)
        if not cases:
            raise EmptyInput("axiom check needs a non-empty sample")
        for case in cases:
            _check_case(rb, case, report)
    return report


def random_cases(rb: RuleBase, n: int, seed: int = 0) -> list[CaseRecord]:
    """Random symbolic cases mixing labels, direct degrees and unassigned factors."""
    rng = np.random.default_rng(seed)
    cats = list(rb.factor_catalogs)
    out = []
    for k in range(n):
        assignments: dict[str, str | float] = {}
        for cat in cats:
            roll = rng.random()
            if roll < 0.3:
                continue
            if roll < 0.65:
                assignments[cat.factor] = cat.levels[rng.integers(len(cat.levels))][0]
            else:
                assignments[cat.factor] = float(rng.random())
        out.append(CaseRecord(f"rand-{k:05d}", assignments))
    return out
