"""Grid evaluation of rule surfaces and CSV/JSON export.

Grid coordinates are computed in closed form, ``x_i = x_min + (i * span) / (n - 1)``,
so a refined grid reproduces coincident points bit for bit rather than
accumulating drift from repeated addition.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DocumentSyntaxError, SchemaError, UnknownRule
from .membership import GaussianParams
from .rulebase import RuleBase, load_json_document

COMPOSITE = "composite"


@dataclass(frozen=True)
class GridSpec:
    x_min: float = 0.0
    x_max: float = 6.0
    y_min: float = 0.0
    y_max: float = 6.0
    resolution: int = 101

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            v = getattr(self, name)
            if isinstance(v, bool) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid bounds must satisfy min < max on both axes")
        if isinstance(self.resolution, bool) or int(self.resolution) != self.resolution:
            raise ValueError(f"resolution must be an integer, got {self.resolution!r}")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        object.__setattr__(self, "resolution", int(self.resolution))

    def axis(self, lo: float, hi: float) -> np.ndarray:
        idx = np.arange(self.resolution, dtype=np.float64)
        return lo + (idx * (hi - lo)) / (self.resolution - 1)

    @property
    def xs(self) -> np.ndarray:
        return self.axis(self.x_min, self.x_max)

    @property
    def ys(self) -> np.ndarray:
        return self.axis(self.y_min, self.y_max)

    def point(self, i: int, j: int) -> tuple[float, float]:
        """Scalar twin of :attr:`xs`/:attr:`ys` for a single grid node."""
        n1 = self.resolution - 1
        x = self.x_min + (float(i) * (self.x_max - self.x_min)) / n1
        y = self.y_min + (float(j) * (self.y_max - self.y_min)) / n1
        return x, y

    def to_dict(self) -> dict:
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "resolution": self.resolution,
        }


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True, eq=False)
class SurfaceData:
    """Row-major degree matrix: ``values[i, j]`` sits at ``(xs[i], ys[j])``.

    ``xs``/``ys`` default to the grid implied by ``spec``; a surface read
    back from CSV keeps the coordinates exactly as written.
    """

    spec: GridSpec
    subject: int | str
    values: np.ndarray
    xs: np.ndarray = field(default=None)
    ys: np.ndarray = field(default=None)

    def __post_init__(self):
        n = self.spec.resolution
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != (n, n):
            raise ValueError(f"values must be {n}x{n}, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        for name, default in (("xs", self.spec.xs), ("ys", self.spec.ys)):
            arr = default if getattr(self, name) is None else np.array(getattr(self, name), dtype=np.float64)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have length {n}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def gaussian_grid(params: GaussianParams, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    dx = xs - params.a
    dy = ys - params.b
    ex = dx * dx / (2.0 * params.sigma_x * params.sigma_x)
    ey = dy * dy / (2.0 * params.sigma_y * params.sigma_y)
    return params.peak * np.exp(-(ex[:, None] + ey[None, :]))


def composite_grid(rb: RuleBase, xs: np.ndarray, ys: np.ndarray, normalized: bool = True) -> np.ndarray:
    total = np.zeros((xs.size, ys.size))
    for rule in sorted(rb.rules, key=lambda r: r.id):
        total += rule.gaussian.weight * gaussian_grid(rule.gaussian, xs, ys)
    if normalized:
        if rb.weight_sum > 0:
            total = total / rb.weight_sum
        total = np.minimum(total, 1.0)
    return total


def eval_surface(rb: RuleBase, subject: int | str, spec: GridSpec = DEFAULT_GRID) -> SurfaceData:
    xs, ys = spec.xs, spec.ys
    if subject == COMPOSITE:
        values = composite_grid(rb, xs, ys)
    else:
        if isinstance(subject, bool) or not isinstance(subject, int):
            raise UnknownRule(subject)
        values = gaussian_grid(rb.rule(subject).gaussian, xs, ys)
    return SurfaceData(spec, subject, values)


def all_rule_surfaces(rb: RuleBase, spec: GridSpec = DEFAULT_GRID) -> dict[int, SurfaceData]:
    return {rid: eval_surface(rb, rid, spec) for rid in rb.rule_ids}


# --- export / import --------------------------------------------------------


def _g17(v: float) -> str:
    return format(float(v), ".17g")


def export_surface(data: SurfaceData, format: str = "json") -> bytes:
    if format == "csv":
        buf = io.StringIO()
        buf.write("x,y,value\n")
        vals = data.values
        for i, x in enumerate(data.xs):
            sx = _g17(x)
            for j, y in enumerate(data.ys):
                buf.write(f"{sx},{_g17(y)},{_g17(vals[i, j])}\n")
        return buf.getvalue().encode("utf-8")
    if format == "json":
        doc = {
            "spec": data.spec.to_dict(),
            "subject": data.subject,
            "values": [[float(v) for v in row] for row in data.values],
        }
        return (json.dumps(doc, allow_nan=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown surface format {format!r}")


def _parse_csv(document: bytes, subject) -> SurfaceData:
    text = document.decode("utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["x", "y", "value"]:
        raise DocumentSyntaxError("expected header x,y,value", "line 1")
    pts = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise DocumentSyntaxError(f"expected 3 fields, got {len(row)}", f"line {lineno}")
        try:
            pts.append(tuple(float(c) for c in row))
        except ValueError:
            raise DocumentSyntaxError("non-numeric field", f"line {lineno}") from None
    n = math.isqrt(len(pts))
    if n < 2 or n * n != len(pts):
        raise SchemaError("rows", f"{len(pts)} points is not a square grid")
    arr = np.array(pts).reshape(n, n, 3)
    xs, ys = arr[:, 0, 0], arr[0, :, 1]
    if not (np.all(arr[:, :, 0] == xs[:, None]) and np.all(arr[:, :, 1] == ys[None, :])):
        raise SchemaError("rows", "points are not in row-major grid order")
    spec = GridSpec(xs[0], xs[-1], ys[0], ys[-1], n)
    return SurfaceData(spec, subject, arr[:, :, 2], xs, ys)


def parse_surface(document: bytes, format: str = "json", subject=COMPOSITE) -> SurfaceData:
    """Inverse of :func:`export_surface`.

    CSV files carry no subject tag; pass ``subject`` to label the result.
    """
    if format == "csv":
        return _parse_csv(document, subject)
    if format != "json":
        raise ValueError(f"unknown surface format {format!r}")
    doc = load_json_document(document, "surface")
    if not isinstance(doc, dict) or set(doc) != {"spec", "subject", "values"}:
        raise SchemaError("$", "expected keys spec, subject, values")
    try:
        spec = GridSpec(**doc["spec"])
    except (TypeError, ValueError) as exc:
        raise SchemaError("$.spec", str(exc)) from None
    try:
        return SurfaceData(spec, doc["subject"], doc["values"])
    except ValueError as exc:
        raise SchemaError("$.values", str(exc)) from None
