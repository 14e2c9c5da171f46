"""Membership functions: severity tables and Gaussian rule surfaces.

Run with ``python demos/01_membership_tables.py``.
"""
from femrisk import canonical_rulebase, complement, eval_gaussian, eval_level_membership

rb = canonical_rulebase()

# Each factor has an ordered severity table. Lookups ignore case and
# surrounding whitespace.
threats = rb.catalog("threats")
for label, degree in threats.levels:
    print(f"threats / {label:<22} -> {degree}")
print("lookup ' Sporadic ':", eval_level_membership(threats, " Sporadic "))

# Factors the rules mention but that have no published table use a
# four-level default.
print("harassment levels:", rb.catalog("harassment").levels)

# Negated rule terms use the complement.
print("complement(0.4) =", complement(0.4))

# Rule surfaces are Gaussians whose maximum is the rule's peak.
g = rb.rule(1).gaussian
print(f"rule 1 center ({g.a}, {g.b}) peak {g.peak}")
for x in (2.5, 3.0, 3.5, 4.0):
    print(f"  mu_1({x}, {g.b}) = {eval_gaussian(g, x, g.b):.6f}")
