"""Frozen transcriptions of the published tables, used as test oracles.

Kept separate from the shipped rulebase data so the tests compare two
independent copies.
"""

# (rule, a, b, sigma_x, sigma_y, peak, degree of risk, expected impact, weight)
RISK_MATRIX = [
    (1, 2.5, 3.2, 0.5, 0.7, 0.9, 'High', 'Significant', 0.08),
    (2, 1.8, 2.9, 0.6, 0.9, 0.85, 'Medium-High', 'Moderate', 0.07),
    (3, 3.0, 4.1, 0.4, 0.5, 0.92, 'High', 'Significant', 0.09),
    (4, 2.1, 3.5, 0.7, 0.8, 0.87, 'Medium-High', 'Moderate', 0.06),
    (5, 3.5, 4.8, 0.3, 0.6, 0.95, 'High', 'Significant', 0.1),
    (6, 2.2, 3.1, 0.8, 0.9, 0.8, 'Medium', 'Moderate', 0.05),
    (7, 3.3, 3.9, 0.4, 0.5, 0.88, 'Medium-High', 'Moderate', 0.07),
    (8, 2.4, 3.0, 0.6, 0.7, 0.83, 'Medium', 'Moderate', 0.06),
    (9, 1.9, 2.7, 0.7, 0.8, 0.75, 'Medium', 'Moderate', 0.04),
    (10, 3.2, 4.5, 0.5, 0.6, 0.9, 'High', 'Significant', 0.08),
    (11, 2.8, 3.3, 0.6, 0.7, 0.82, 'Medium', 'Moderate', 0.05),
    (12, 3.1, 4.0, 0.4, 0.5, 0.89, 'Medium-High', 'Moderate', 0.07),
    (13, 2.3, 2.9, 0.7, 0.8, 0.81, 'Medium', 'Moderate', 0.05),
    (14, 3.4, 4.7, 0.3, 0.4, 0.93, 'High', 'Significant', 0.09),
    (15, 2.0, 3.6, 0.5, 0.6, 0.77, 'Medium', 'Moderate', 0.04),
    (16, 2.7, 3.2, 0.6, 0.7, 0.84, 'Medium', 'Moderate', 0.06),
    (17, 3.6, 4.9, 0.3, 0.5, 0.91, 'High', 'Significant', 0.08),
    (18, 2.4, 2.8, 0.7, 0.8, 0.8, 'Medium', 'Moderate', 0.05),
    (19, 3.0, 4.1, 0.4, 0.6, 0.87, 'Medium-High', 'Moderate', 0.07),
    (20, 2.5, 3.3, 0.5, 0.7, 0.85, 'Medium-High', 'Moderate', 0.06),
    (21, 3.2, 4.6, 0.5, 0.6, 0.9, 'High', 'Significant', 0.09),
    (22, 2.8, 3.7, 0.6, 0.8, 0.83, 'Medium', 'Moderate', 0.05),
    (23, 3.5, 4.8, 0.3, 0.5, 0.92, 'High', 'Significant', 0.1),
    (24, 2.2, 3.1, 0.8, 0.9, 0.76, 'Medium', 'Moderate', 0.04),
    (25, 3.3, 3.9, 0.4, 0.6, 0.88, 'Medium-High', 'Moderate', 0.07),
    (26, 2.4, 3.2, 0.7, 0.8, 0.82, 'Medium', 'Moderate', 0.06),
    (27, 1.9, 2.6, 0.7, 0.9, 0.74, 'Medium', 'Moderate', 0.04),
    (28, 3.1, 4.3, 0.5, 0.7, 0.9, 'High', 'Significant', 0.08),
    (29, 2.7, 3.4, 0.6, 0.8, 0.81, 'Medium', 'Moderate', 0.05),
    (30, 3.4, 4.7, 0.3, 0.4, 0.93, 'High', 'Significant', 0.1),
    (31, 2.0, 3.5, 0.5, 0.7, 0.79, 'Medium', 'Moderate', 0.04),
    (32, 2.6, 3.8, 0.6, 0.9, 0.85, 'Medium-High', 'Moderate', 0.06),
    (33, 3.0, 4.2, 0.4, 0.5, 0.88, 'Medium-High', 'Moderate', 0.08),
    (34, 2.3, 2.9, 0.7, 0.8, 0.77, 'Medium', 'Moderate', 0.05),
    (35, 3.5, 4.8, 0.3, 0.5, 0.91, 'High', 'Significant', 0.09),
    (36, 2.1, 3.0, 0.8, 0.9, 0.75, 'Medium', 'Moderate', 0.04),
    (37, 3.3, 4.4, 0.5, 0.7, 0.89, 'Medium-High', 'Moderate', 0.07),
    (38, 2.4, 3.1, 0.7, 0.8, 0.82, 'Medium', 'Moderate', 0.06),
    (39, 1.8, 2.7, 0.6, 0.9, 0.74, 'Medium', 'Moderate', 0.04),
    (40, 3.2, 4.5, 0.5, 0.6, 0.9, 'High', 'Significant', 0.08),
    (41, 2.8, 3.6, 0.6, 0.8, 0.83, 'Medium', 'Moderate', 0.05),
    (42, 3.1, 4.0, 0.4, 0.5, 0.87, 'Medium-High', 'Moderate', 0.07),
    (43, 2.3, 2.9, 0.7, 0.8, 0.81, 'Medium', 'Moderate', 0.05),
    (44, 3.4, 4.7, 0.3, 0.4, 0.93, 'High', 'Significant', 0.09),
    (45, 2.5, 3.4, 0.5, 0.7, 0.85, 'Medium-High', 'Moderate', 0.06),
    (46, 3.0, 4.1, 0.4, 0.6, 0.87, 'Medium-High', 'Moderate', 0.07),
    (47, 2.7, 3.5, 0.6, 0.7, 0.84, 'Medium', 'Moderate', 0.05),
    (48, 3.6, 4.9, 0.3, 0.5, 0.91, 'High', 'Significant', 0.1),
    (49, 2.2, 3.1, 0.8, 0.9, 0.76, 'Medium', 'Moderate', 0.04),
    (50, 3.3, 4.4, 0.5, 0.6, 0.89, 'Medium-High', 'Moderate', 0.08),
]

# Sum of the weight column, computed exactly with fractions.Fraction: 327/100.
WEIGHT_COLUMN_SUM = 3.27

# factor -> [(label, degree)] least to most severe
LEVEL_TABLES = {
    "relationship-partner": [("no prior relationship", 0.1), ("distant", 0.4), ("close", 0.7), ("extremely close", 1.0)],
    "sexual-violence": [("none", 0.0), ("low or sporadic", 0.4), ("moderate", 0.8), ("high and frequent", 1.0)],
    "isolation": [("none", 0.0), ("mild", 0.3), ("partial", 0.7), ("total", 1.0)],
    "threats": [("none", 0.0), ("sporadic", 0.5), ("moderate", 0.8), ("frequent and severe", 1.0)],
    "mutilations": [("none", 0.0), ("minor", 0.3), ("moderate", 0.7), ("severe", 1.0)],
    "public-exposure": [("none", 0.0), ("mild", 0.3), ("moderate", 0.7), ("public humiliation", 1.0)],
    "labor-subordination": [("none", 0.0), ("mild", 0.3), ("moderate", 0.7), ("extreme", 1.0)],
}

# Cluster -> rule ids as listed in the rule classification table (duplicates included).
CLUSTER_MEMBERS = {
    1: {1, 2, 4, 5, 10},
    2: {7, 16, 14, 31, 48},
    3: {18, 27, 36, 41},
    4: {19, 29, 42, 46},
    5: {23, 33, 43},
    6: {37, 50},
    7: {22},
    8: {3, 9, 28, 44, 49, 47, 13, 24, 32, 6, 25, 38, 39, 30, 34, 15, 8, 12, 17, 21},
    9: {11, 30, 8, 9, 15, 20},
}

GAUSSIAN_ONLY = {26, 35, 40, 45}

# Rules whose antecedent holds a complemented term: id -> negated factor.
NEGATED = {2: "sexual-violence", 11: "relationship-partner"}
