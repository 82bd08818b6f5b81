"""Stability of Dirichlet solutions under monotone exponent perturbations.

For a schedule ``p_i -> p`` the limit problem and every scheduled problem are
solved on the same mesh, and each index gets a :class:`StabilityRow` with the
convergence quantities:

* ``D_grad_modular``: ``int |grad(w_i - w)|^{p_i}`` for increasing schedules,
  ``int |grad(w_i - w)|^p`` for decreasing ones;
* ``lux_norm_diff``: ``||w_i - w||`` in the Luxemburg norm of the first
  scheduled exponent;
* the weighted energy modulars of ``u_i - phi`` and ``u - phi`` and the gap
  between their unweighted counterparts.
"""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .mesh import cell_values, gradient
from .modular import luxemburg_norm, modular, weighted_modular
from .solver import SolverError, SolverOptions, solve_dirichlet

__all__ = [
    "StabilityRow", "StabilityReport", "StabilityError",
    "diagnostics_row", "run_stability", "REPORT_COLUMNS",
]

REPORT_COLUMNS = ("i", "sup_gap", "D_grad_modular", "lux_norm_diff",
                  "energy_modular_i", "energy_modular_limit", "modular_gap")


class StabilityError(RuntimeError):
    def __init__(self, index, cause):
        super().__init__(f"solve for schedule index {index} failed: {cause}")
        self.index = index
        self.cause = cause


@dataclass(frozen=True)
class StabilityRow:
    i: int
    sup_gap: float
    D_grad_modular: float
    lux_norm_diff: float
    energy_modular_i: float
    energy_modular_limit: float
    modular_gap: float
    # unweighted modulars behind modular_gap, and the weighted gap
    modular_i: float = 0.0
    modular_limit: float = 0.0
    weighted_gap: float = 0.0

    def values(self):
        return tuple(getattr(self, name) for name in REPORT_COLUMNS)


@dataclass
class StabilityReport:
    direction: str
    rows: list
    limit_solution: object = None
    solutions: list = None

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows])

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in self.rows:
            writer.writerow([row.i] + [format(v, ".17g") for v in row.values()[1:]])
        return buf.getvalue()


def diagnostics_row(i, w_i, w, p_i, p, problem, reference_p=None, direction="increasing"):
    """Convergence quantities for one scheduled solution ``w_i`` against ``w``.

    ``reference_p`` is the exponent of the Luxemburg norm used for
    ``lux_norm_diff`` (defaults to ``p_i``).
    """
    mesh = problem.mesh
    reference_p = p_i if reference_p is None else reference_p
    grad_diff = gradient(np.asarray(w_i) - np.asarray(w), mesh)
    D = modular(grad_diff, p_i if direction == "increasing" else p, mesh)
    lux = luxemburg_norm(cell_values(np.asarray(w_i) - np.asarray(w), mesh), reference_p, mesh).value
    # u - phi = -w, so the energy modulars only need grad w
    g_i = gradient(w_i, mesh)
    g = gradient(w, mesh)
    weighted_i = weighted_modular(g_i, p_i, mesh)
    weighted_lim = weighted_modular(g, p, mesh)
    plain_i = modular(g_i, p_i, mesh)
    plain_lim = modular(g, p, mesh)
    return StabilityRow(
        i=int(i),
        sup_gap=float(np.max(np.abs(p_i.samples - p.samples))),
        D_grad_modular=D,
        lux_norm_diff=lux,
        energy_modular_i=weighted_i,
        energy_modular_limit=weighted_lim,
        modular_gap=abs(plain_i - plain_lim),
        modular_i=plain_i,
        modular_limit=plain_lim,
        weighted_gap=abs(weighted_i - weighted_lim),
    )


def run_stability(problem, schedule, opts=None, workers=1):
    """Solve the limit problem and every scheduled problem; tabulate the rows.

    ``problem`` carries the limit exponent (it should equal ``schedule.base``).
    Scheduled solves are independent and run on ``workers`` threads.
    """
    opts = opts or SolverOptions()
    limit_problem = problem.with_exponent(schedule.base)
    try:
        limit = solve_dirichlet(limit_problem, opts)
    except SolverError as exc:
        raise StabilityError(0, exc) from exc

    def solve(index):
        try:
            return solve_dirichlet(problem.with_exponent(schedule[index - 1]), opts)
        except SolverError as exc:
            raise StabilityError(index, exc) from exc

    indices = range(1, schedule.count + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(solve, indices))
    else:
        results = [solve(i) for i in indices]

    reference = schedule[0]
    rows = [
        diagnostics_row(i, res.w, limit.w, schedule[i - 1], schedule.base, problem,
                        reference_p=reference, direction=schedule.direction)
        for i, res in zip(indices, results)
    ]
    return StabilityReport(schedule.direction, rows, limit, results)
