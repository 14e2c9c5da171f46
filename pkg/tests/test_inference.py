import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from femrisk.errors import EmptyInput, MissingActivation, MixedModeError, OutOfRange
from femrisk.inference import (
    activation,
    aggregate_weighted,
    check_axioms,
    classify,
    evaluate_case,
    min_composite,
    random_cases,
)
from femrisk.membership import LevelMembership
from femrisk.rulebase import CaseRecord, RuleTerm, canonical_rulebase, resolve_case
from femrisk.surface import GridSpec

from risk_tables import RISK_MATRIX, WEIGHT_COLUMN_SUM

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@pytest.fixture(scope="module")
def rb():
    return canonical_rulebase()


def resolved_with(rb, **degrees):
    base = {f: 0.0 for f in rb.factors}
    base.update({k.replace("_", "-"): v for k, v in degrees.items()})
    return base


# --- activation -------------------------------------------------------------


def test_rule1_min(rb):
    r = resolved_with(rb, relationship_partner=1.0, sexual_violence=0.8)
    assert activation(rb.rule(1), r) == 0.8


def test_rule2_complement(rb):
    r = resolved_with(rb, relationship_partner=1.0, sexual_violence=0.4)
    assert activation(rb.rule(2), r) == min(1.0, 1 - 0.4)
    assert activation(rb.rule(2), r) == pytest.approx(0.6, abs=1e-15)


def test_rule3_single_term(rb):
    assert activation(rb.rule(3), resolved_with(rb, incommunication=0.7)) == 0.7


def test_rule11_negated_relationship(rb):
    r = resolved_with(rb, relationship_partner=0.1, mutilations=1.0)
    assert activation(rb.rule(11), r) == pytest.approx(0.9, abs=1e-15)


def test_gaussian_only_rule_is_zero_symbolically(rb):
    r = {f: 1.0 for f in rb.factors}
    for rid in (26, 35, 40, 45):
        assert activation(rb.rule(rid), r) == 0.0


@settings(max_examples=300)
@given(st.data())
def test_adding_a_term_never_increases_activation(rb, data):
    rule = data.draw(st.sampled_from([r for r in rb.rules if r.terms]))
    resolved = {f: data.draw(unit) for f in rb.factors}
    spare = [f for f in rb.factors if f not in {t.factor for t in rule.terms}]
    extra = RuleTerm(data.draw(st.sampled_from(spare)), data.draw(st.booleans()))
    bigger = dataclasses.replace(rule, terms=rule.terms + (extra,))
    assert activation(bigger, resolved) <= activation(rule, resolved)


# --- min composition --------------------------------------------------------


def test_min_composite_examples():
    assert min_composite([0.9, 0.4, 0.7]) == 0.4
    assert min_composite([0.0, 0.63]) == 0.0


def test_min_composite_empty():
    with pytest.raises(EmptyInput):
        min_composite([])


def test_min_composite_range():
    with pytest.raises(OutOfRange):
        min_composite([0.2, 1.5])


def test_min_composite_matches_scan():
    rng = random.Random(11)
    for _ in range(1000):
        xs = [rng.random() for _ in range(rng.randint(1, 30))]
        lowest = xs[0]
        for v in xs[1:]:
            if v < lowest:
                lowest = v
        assert min_composite(xs) == lowest


# --- aggregation ------------------------------------------------------------


def test_aggregate_all_zero(rb):
    acts = {rid: 0.0 for rid in rb.rule_ids}
    assert aggregate_weighted(rb, acts, normalized=False) == 0.0
    assert aggregate_weighted(rb, acts) == 0.0


@given(unit)
def test_aggregate_constant_is_fixed_point(a):
    rb = canonical_rulebase()
    acts = {rid: a for rid in rb.rule_ids}
    assert aggregate_weighted(rb, acts) == pytest.approx(a, abs=1e-12)


def test_aggregate_raw_unit_equals_weight_column(rb):
    acts = {rid: 1.0 for rid in rb.rule_ids}
    assert aggregate_weighted(rb, acts, normalized=False) == pytest.approx(WEIGHT_COLUMN_SUM, abs=1e-12)
    # the column does not sum to one
    assert abs(WEIGHT_COLUMN_SUM - 1.0) > 1


def test_aggregate_missing(rb):
    acts = {rid: 0.5 for rid in rb.rule_ids if rid != 17}
    with pytest.raises(MissingActivation) as exc:
        aggregate_weighted(rb, acts)
    assert exc.value.rule_id == 17


@settings(max_examples=100, deadline=None)
@given(st.lists(unit, min_size=50, max_size=50))
def test_doubling_weights_leaves_normalized_score(acts_list):
    rb = canonical_rulebase()
    acts = dict(zip(rb.rule_ids, acts_list))
    doubled = dataclasses.replace(
        rb,
        rules=[
            dataclasses.replace(r, gaussian=dataclasses.replace(r.gaussian, weight=2 * r.gaussian.weight))
            for r in rb.rules
        ],
    )
    a = aggregate_weighted(rb, acts)
    b = aggregate_weighted(doubled, acts)
    assert b == pytest.approx(a, abs=1e-12)
    assert classify(a) == classify(b) or abs(a - 0.85) < 1e-12 or abs(a - 0.9) < 1e-12


# --- classification ---------------------------------------------------------


@pytest.mark.parametrize(
    "score,expected",
    [
        (0.95, ("High", "Significant")),
        (0.87, ("Medium-High", "Moderate")),
        (0.80, ("Medium", "Moderate")),
        (0.90, ("High", "Significant")),
        (0.85, ("Medium-High", "Moderate")),
        (0.0, ("Medium", "Moderate")),
        (1.0, ("High", "Significant")),
    ],
)
def test_classify(score, expected):
    assert classify(score) == expected


@pytest.mark.parametrize("bad", [-0.1, 1.01])
def test_classify_range(bad):
    with pytest.raises(OutOfRange):
        classify(bad)


def test_thresholds_are_the_consistent_cut_points():
    # every (medium_high, high) pair on a 0.001 lattice reproducing the table
    consistent = []
    for lo in range(700, 1001):
        for hi in range(lo + 1, 1001):
            t = (lo / 1000, hi / 1000)
            if all(classify(row[5], t)[0] == row[6] for row in RISK_MATRIX):
                consistent.append(t)
    # upper end of each admissible band is the tabulated boundary value
    assert max(t[0] for t in consistent) == 0.85
    assert max(t[1] for t in consistent) == 0.90
    assert (0.85, 0.90) in consistent


def test_classify_uses_rulebase_thresholds(rb):
    strict = dataclasses.replace(rb, thresholds=(0.5, 0.6))
    case = CaseRecord("c", xy=(2.5, 3.2))
    a = evaluate_case(strict, case)
    assert a.category == classify(a.score, (0.5, 0.6))[0]
    assert classify(0.55, strict.thresholds) == ("Medium-High", "Moderate")


# --- evaluate_case ----------------------------------------------------------


def test_empty_case(rb):
    a = evaluate_case(rb, CaseRecord("empty"))
    assert set(a.activations.values()) == {0.0}
    assert a.mu_total_raw == 0.0 and a.mu_total_normalized == 0.0
    assert a.category == "Medium"
    assert a.mode == "symbolic"
    assert list(a.activations) == list(range(1, 51))


def test_case_partner_sexual_violence(rb):
    case = CaseRecord("c", {"relationship-partner": "extremely close", "sexual-violence": "high and frequent"})
    a = evaluate_case(rb, case)
    assert a.activations[1] == 1.0
    assert a.activations[2] == 0.0


def test_gaussian_mode(rb):
    a = evaluate_case(rb, CaseRecord("g", xy=(2.5, 3.2)))
    assert a.mode == "gaussian"
    assert a.activations[1] == 0.9
    assert a.mu_f == min(a.activations.values())
    assert a.mu_total_normalized == pytest.approx(a.mu_total_raw / rb.weight_sum, abs=1e-15)


def test_mixed_mode_rejected(rb):
    with pytest.raises(MixedModeError):
        evaluate_case(rb, CaseRecord("m", {"threats": "none"}, xy=(1.0, 1.0)))


def test_min_aggregator(rb):
    case = CaseRecord("c", xy=(3.4, 4.7))
    a = evaluate_case(rb, case, aggregator="min")
    assert a.score == a.mu_f
    assert (a.category, a.impact) == classify(a.mu_f)


def test_no_termed_rules_flags_mu_f(rb):
    only_gauss = dataclasses.replace(rb, rules=[rb.rule(26)])
    a = evaluate_case(only_gauss, CaseRecord("c"))
    assert a.mu_f == 0.0
    assert a.notes


def test_mu_f_is_min_of_termed_activations(rb):
    for case in random_cases(rb, 200, seed=5):
        a = evaluate_case(rb, case)
        termed = [a.activations[r.id] for r in rb.rules if r.terms]
        assert a.mu_f == min(termed)
        assert a.mu_total_normalized == pytest.approx(a.mu_total_raw / rb.weight_sum, abs=1e-15)
        assert a.category == classify(a.mu_total_normalized)[0]


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_assessment_bounded(rb, data):
    assignments = {f: data.draw(unit) for f in data.draw(st.sets(st.sampled_from(rb.factors)))}
    a = evaluate_case(rb, CaseRecord("h", assignments))
    assert all(0.0 <= v <= 1.0 for v in a.activations.values())
    assert 0.0 <= a.mu_f <= 1.0
    assert 0.0 <= a.mu_total_normalized <= 1.0


def test_min_dominance_randomized(rb):
    for case in random_cases(rb, 2000, seed=1):
        resolved = resolve_case(rb, case)
        for r in rb.rules:
            act = activation(r, resolved)
            for t in r.terms:
                d = resolved[t.factor]
                assert act <= (1 - d if t.negated else d)


# --- axioms -----------------------------------------------------------------


def test_axioms_canonical_grid(rb):
    report = check_axioms(rb, GridSpec(resolution=21))
    assert report.ok, report.violations[:3]
    assert report.checked["boundedness"] > 0


def test_axioms_canonical_cases(rb):
    report = check_axioms(rb, random_cases(rb, 300, seed=2))
    assert report.ok
    assert report.checked["min-dominance"] > 0


def test_axioms_injected_peak(rb):
    r = rb.rule(12)
    bad = dataclasses.replace(r, gaussian=dataclasses.replace(r.gaussian, peak=1.2))
    broken = dataclasses.replace(rb, rules=[bad if x.id == 12 else x for x in rb.rules])
    report = check_axioms(broken, GridSpec(resolution=11))
    assert {v.kind for v in report.violations} == {"boundedness"}
    assert any(v.subject == "rule 12 peak" for v in report.violations)


def test_axioms_non_monotone_catalog(rb):
    bad = LevelMembership("threats", [("none", 0.0), ("a", 0.8), ("b", 0.5), ("c", 1.0)])
    broken = dataclasses.replace(rb, factor_catalogs=[bad if c.factor == "threats" else c for c in rb.factor_catalogs])
    report = check_axioms(broken, GridSpec(resolution=3))
    assert [v.kind for v in report.violations] == ["monotonicity"]
    assert "rank 2" in report.violations[0].detail


def test_axioms_empty_sample(rb):
    with pytest.raises(EmptyInput):
        check_axioms(rb, [])


def test_random_cases_reproducible(rb):
    assert random_cases(rb, 20, seed=9) == random_cases(rb, 20, seed=9)
