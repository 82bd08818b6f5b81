"""Variable exponent Lebesgue/Sobolev calculus and a p(x)-Laplacian solver.

Submodules
----------
expression  field expressions (``"2 + x"``, ``"sin(pi*x)*y"``)
mesh        structured P1 meshes, gradients, quadrature
exponent    exponent fields, log-Hoelder estimate, monotone schedules
modular     modulars, Luxemburg norms, inequality gap checks
solver      Dirichlet energy, Newton with regularization continuation
stability   convergence tables for exponent schedules
checks      seeded randomized inequality suites
cli         ``varexp`` command line
"""

from .expression import Expression, ExpressionError, parse_expression
from .mesh import (Mesh, build_mesh, cell_values, gradient, integrate, interpolate,
                   interval, rectangle)
from .exponent import (ExponentField, ExponentSchedule, build_exponent,
                       log_holder_constant, make_schedule)
from .modular import (GapReport, NormResult, conjugate, convexity_gap, embedding_constant,
                      embedding_gap, epsilon_bound_gap, holder_gap, luxemburg_norm, modular,
                      norm_modular_gap, sobolev_norm, weighted_modular)
from .solver import (DirichletProblem, SolveResult, SolverError, SolverOptions, energy,
                     energy_gradient, energy_hessian, solve_dirichlet, weak_residual)
from .stability import StabilityReport, StabilityRow, diagnostics_row, run_stability

__version__ = "0.1.0"
