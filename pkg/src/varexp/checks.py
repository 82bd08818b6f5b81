"""Seeded randomized suites for the variable exponent inequalities.

Each trial draws an exponent family, random cell data at a random scale
(so that both the ``modular <= 1`` and ``> 1`` regimes occur) and evaluates
one or more gap checks.  Results are rows of
``(check_name, trial, lhs, rhs, satisfied)``.
"""

import csv
import io
from typing import NamedTuple

import numpy as np

from .exponent import ExponentField, build_exponent
from .mesh import gradient, interval
from .modular import (convexity_gap, embedding_gap, epsilon_bound_gap, holder_gap,
                      norm_modular_gap)

__all__ = ["GapRow", "FAMILIES", "SUITES", "run_suite", "rows_to_csv"]

FAMILIES = ("2", "2 + x", "1.5 + 0.4*sin(3*x)")
SUITES = ("holder", "epsilon", "norm-modular", "convexity")
GAP_COLUMNS = ("check_name", "trial", "lhs", "rhs", "satisfied")


class GapRow(NamedTuple):
    check_name: str
    trial: int
    lhs: float
    rhs: float
    satisfied: bool


def _random_cells(rng, size):
    scale = 10.0 ** rng.uniform(-2.0, 2.0)
    values = scale * rng.standard_normal(size)
    if rng.random() < 0.25:
        values[rng.random(size) < 0.5] = 0.0
    return values


def run_suite(name, trials, seed, n=64):
    """Run ``trials`` seeded trials of suite ``name`` on (0, 1) with ``n`` cells.

    Trial ``k`` uses exponent family ``FAMILIES[k % 3]``.  The ``epsilon``
    suite emits three rows per trial (unweighted, weighted, and the norm
    embedding bound); the others emit one.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    mesh = interval(0.0, 1.0, n)
    exponents = [build_exponent(expr, mesh) for expr in FAMILIES]
    rng = np.random.default_rng(seed)
    rows = []
    nc = mesh.num_cells
    for trial in range(trials):
        p = exponents[trial % len(exponents)]
        if name == "holder":
            u, v = _random_cells(rng, nc), _random_cells(rng, nc)
            checks = [("holder", holder_gap(u, v, p, mesh))]
        elif name == "epsilon":
            f = _random_cells(rng, nc)
            eps = rng.uniform(1e-3, 1.0 - 1e-3)
            q = ExponentField(p.samples + eps * rng.random(nc))
            checks = [
                ("epsilon", epsilon_bound_gap(f, p, q, eps, mesh)),
                ("epsilon-weighted", epsilon_bound_gap(f, p, q, eps, mesh, weighted=True)),
                ("embedding", embedding_gap(f, p, q, eps, mesh)),
            ]
        elif name == "norm-modular":
            u = _random_cells(rng, nc)
            checks = [("norm-modular", norm_modular_gap(u, p, mesh))]
        else:
            u = _random_cells(rng, mesh.num_vertices)
            v = _random_cells(rng, mesh.num_vertices)
            checks = [("convexity", convexity_gap(gradient(u, mesh), gradient(v, mesh), p, mesh))]
        rows.extend(GapRow(check, trial, r.lhs, r.rhs, r.satisfied) for check, r in checks)
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(GAP_COLUMNS)
    for r in rows:
        writer.writerow([r.check_name, r.trial, format(r.lhs, ".17g"), format(r.rhs, ".17g"),
                         "true" if r.satisfied else "false"])
    return buf.getvalue()
