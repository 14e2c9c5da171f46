"""Scoring cases symbolically and in Gaussian mode.

Run with ``python demos/02_scoring_cases.py``.
"""
from femrisk import CaseRecord, canonical_rulebase, evaluate_case

rb = canonical_rulebase()

cases = [
    CaseRecord("no-evidence"),
    CaseRecord(
        "partner-violence",
        {
            "relationship-partner": "extremely close",
            "sexual-violence": "high and frequent",
            "threats": "frequent and severe",
            "public-exposure": "moderate",
            "physical-injuries": "severe",
        },
    ),
    # direct degrees are accepted alongside labels
    CaseRecord("workplace", {"relationship-work": 0.7, "harassment": "severe", "labor-subordination": "extreme"}),
    # explicit coordinates switch to Gaussian mode
    CaseRecord("near-rule-5", xy=(3.5, 4.8)),
]

for case in cases:
    a = evaluate_case(rb, case)
    top = sorted(a.activations.items(), key=lambda kv: -kv[1])[:3]
    print(f"{a.case_id:<17} mode={a.mode:<9} mu_f={a.mu_f:.3f} "
          f"mu_total={a.mu_total_normalized:.3f} ({a.mu_total_raw:.3f} raw) -> {a.category}/{a.impact}")
    print("   strongest rules:", ", ".join(f"R{rid}={v:.2f}" for rid, v in top))

# The min aggregator grades by the most restrictive rule instead.
a = evaluate_case(rb, cases[-1], aggregator="min")
print("near-rule-5 with min aggregator:", a.score, a.category)
