"""Evaluating and exporting rule surfaces on a grid.

Writes ``rule5.csv`` and ``composite.json`` to the current directory; any
plotting tool can read them. Run with ``python demos/03_risk_surfaces.py``.
"""
import numpy as np

from femrisk import GridSpec, canonical_rulebase, eval_surface, export_surface
from femrisk.inference import check_axioms

rb = canonical_rulebase()
grid = GridSpec(0.0, 6.0, 0.0, 6.0, 101)

rule5 = eval_surface(rb, 5, grid)
i, j = np.unravel_index(np.argmax(rule5.values), rule5.values.shape)
print(f"rule 5 max {rule5.values[i, j]:.4f} at ({rule5.xs[i]:.2f}, {rule5.ys[j]:.2f})")

composite = eval_surface(rb, "composite", grid)
i, j = np.unravel_index(np.argmax(composite.values), composite.values.shape)
print(f"composite max {composite.values[i, j]:.4f} at ({composite.xs[i]:.2f}, {composite.ys[j]:.2f})")

with open("rule5.csv", "wb") as fh:
    fh.write(export_surface(rule5, "csv"))
with open("composite.json", "wb") as fh:
    fh.write(export_surface(composite, "json"))

report = check_axioms(rb, grid)
print("axiom check:", report.summary())
