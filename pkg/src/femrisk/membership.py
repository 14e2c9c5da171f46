"""Membership functions: ordinal level tables and 2-D Gaussian surfaces.

Two families are supported. A :class:`LevelMembership` maps a severity
label (``"moderate"``, ``"frequent and severe"``, ...) onto a degree in
[0, 1]. A :class:`GaussianParams` describes a bell surface over the
(x, y) plane whose maximum equals its ``peak``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import NonFiniteInput, OutOfRange, UnknownLevel

FactorId = str

RELATIONSHIP_PREFIX = "relationship-"


def normalize_label(label: str) -> str:
    return label.strip().lower()


def is_relationship(factor: FactorId) -> bool:
    return factor.startswith(RELATIONSHIP_PREFIX)


@dataclass(frozen=True)
class LevelMembership:
    """Severity-ordered label table for one factor.

    ``levels`` runs from least to most severe. Construction does not
    enforce the degree invariants; the rulebase validator reports them.
    """

    factor: FactorId
    levels: tuple[tuple[str, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "levels", tuple((str(lbl), float(deg)) for lbl, deg in self.levels)
        )

    @property
    def labels(self) -> list[str]:
        return [lbl for lbl, _ in self.levels]

    @property
    def degrees(self) -> list[float]:
        return [deg for _, deg in self.levels]

    def lookup(self) -> dict[str, float]:
        return {normalize_label(lbl): deg for lbl, deg in self.levels}


def eval_level_membership(table: LevelMembership, label: str) -> float:
    key = normalize_label(label)
    for lbl, deg in table.levels:
        if normalize_label(lbl) == key:
            return deg
    raise UnknownLevel(label, table.factor)


@dataclass(frozen=True)
class GaussianParams:
    a: float
    b: float
    sigma_x: float
    sigma_y: float
    peak: float
    weight: float


def eval_gaussian(params: GaussianParams, x: float, y: float) -> float:
    """Peak-scaled Gaussian at (x, y).

    ``peak * exp(-((x-a)^2 / (2 sx^2) + (y-b)^2 / (2 sy^2)))``
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise NonFiniteInput(f"coordinates must be finite, got ({x!r}, {y!r})")
    dx = x - params.a
    dy = y - params.b
    expo = dx * dx / (2.0 * params.sigma_x * params.sigma_x) + dy * dy / (
        2.0 * params.sigma_y * params.sigma_y
    )
    return params.peak * math.exp(-expo)


def complement(degree: float) -> float:
    if not 0.0 <= degree <= 1.0:
        raise OutOfRange(f"degree {degree!r} outside [0, 1]")
    return 1.0 - degree


def monotonicity_breaks(table: LevelMembership) -> list[int]:
    """Ranks (0-based) where a degree drops below its predecessor."""
    degs = table.degrees
    return [k for k in range(1, len(degs)) if degs[k] < degs[k - 1]]


# --- canonical catalogs -----------------------------------------------------

RELATIONSHIP_LEVELS = (
    ("no prior relationship", 0.1),
    ("distant", 0.4),
    ("close", 0.7),
    ("extremely close", 1.0),
)

TABULATED_LEVELS: dict[FactorId, tuple[tuple[str, float], ...]] = {
    "relationship-partner": RELATIONSHIP_LEVELS,
    "sexual-violence": (
        ("none", 0.0),
        ("low or sporadic", 0.4),
        ("moderate", 0.8),
        ("high and frequent", 1.0),
    ),
    "isolation": (
        ("none", 0.0),
        ("mild", 0.3),
        ("partial", 0.7),
        ("total", 1.0),
    ),
    "threats": (
        ("none", 0.0),
        ("sporadic", 0.5),
        ("moderate", 0.8),
        ("frequent and severe", 1.0),
    ),
    "mutilations": (
        ("none", 0.0),
        ("minor", 0.3),
        ("moderate", 0.7),
        ("severe", 1.0),
    ),
    "public-exposure": (
        ("none", 0.0),
        ("mild", 0.3),
        ("moderate", 0.7),
        ("public humiliation", 1.0),
    ),
    "labor-subordination": (
        ("none", 0.0),
        ("mild", 0.3),
        ("moderate", 0.7),
        ("extreme", 1.0),
    ),
}

# Factors referenced by the rules but never tabulated.
DEFAULT_LEVELS = (
    ("none", 0.0),
    ("mild", 0.3),
    ("moderate", 0.7),
    ("severe", 1.0),
)

RELATIONSHIP_FACTORS = (
    "relationship-partner",
    "relationship-friendship",
    "relationship-dating",
    "relationship-marriage",
    "relationship-trust",
    "relationship-consanguinity",
    "relationship-work",
)

CONDITION_FACTORS = (
    "sexual-violence",
    "isolation",
    "isolation-physical",
    "isolation-social",
    "isolation-digital",
    "threats",
    "mutilations",
    "public-exposure",
    "labor-subordination",
    "harassment",
    "physical-injuries",
    "incommunication",
    "deprivation-of-liberty",
    "indecent-exposure",
    "shameful-injuries",
)


def default_catalogs(factors: Iterable[FactorId] | None = None) -> list[LevelMembership]:
    """Level tables for ``factors`` (all known factors by default)."""
    if factors is None:
        factors = RELATIONSHIP_FACTORS + CONDITION_FACTORS
    out = []
    for f in factors:
        if f in TABULATED_LEVELS:
            levels = TABULATED_LEVELS[f]
        elif is_relationship(f):
            levels = RELATIONSHIP_LEVELS
        else:
            levels = DEFAULT_LEVELS
        out.append(LevelMembership(f, levels))
    return out
