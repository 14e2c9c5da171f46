"""Fuzzy-inference femicide-risk model.

Level catalogs and Gaussian rule surfaces (:mod:`femrisk.membership`), the
50-rule rulebase and its JSON format (:mod:`femrisk.rulebase`), min and
weighted composition (:mod:`femrisk.inference`), grid export
(:mod:`femrisk.surface`) and the ``femrisk`` command (:mod:`femrisk.cli`).
"""
from .inference import (
    Assessment,
    activation,
    aggregate_weighted,
    check_axioms,
    classify,
    evaluate_case,
    min_composite,
)
from .membership import GaussianParams, LevelMembership, complement, eval_gaussian, eval_level_membership
from .rulebase import (
    CaseRecord,
    Rule,
    RuleBase,
    RuleTerm,
    canonical_rulebase,
    parse_rulebase,
    resolve_case,
    serialize_rulebase,
    validate_rulebase,
)
from .surface import GridSpec, SurfaceData, eval_surface, export_surface, parse_surface

__version__ = "0.1.0"
