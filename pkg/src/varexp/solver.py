"""Dirichlet problem for the p(x)-Laplacian via convex energy minimization.

The homogeneous part ``u`` (zero on the boundary) minimizes

    E_reg(u) = sum_T |T| / p_T * (|grad(u - phi)|_T^2 + reg^2)^(p_T / 2) - int f u

and the solution of ``div(|grad w|^(p-2) grad w) = f``, ``w = phi`` on the
boundary, is ``w = phi - u``.  ``reg`` is driven from ``reg_initial`` down to
``reg_final`` by factors of 10; every stage is a damped Newton iteration with
Armijo backtracking, warm-started from the previous stage.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .exponent import ExponentField
from .mesh import cell_values, gradient

__all__ = [
    "DirichletProblem", "SolverOptions", "SolveResult", "SolverError",
    "energy", "energy_gradient", "energy_hessian", "solve_dirichlet", "weak_residual",
    "load_vector",
]

log = logging.getLogger(__name__)

_LINEAR_RTOL = 1e-10
_MIN_STEP = 1e-14


@dataclass(frozen=True)
class DirichletProblem:
    """Mesh, exponent, boundary datum ``phi`` and source density ``f``.

    ``phi`` and ``source`` are nodal values on all vertices; only the boundary
    values of ``phi`` matter for the solution, but its interior values fix
    the splitting ``w = phi - u``.
    """

    mesh: object
    p: ExponentField
    phi: np.ndarray
    source: np.ndarray

    def __post_init__(self):
        nv, nc = self.mesh.num_vertices, self.mesh.num_cells
        phi = np.array(self.phi, dtype=float)
        source = np.array(self.source, dtype=float)
        if phi.shape != (nv,) or source.shape != (nv,):
            raise ValueError(f"phi and source need one value per vertex ({nv})")
        if len(self.p) != nc:
            raise ValueError(f"exponent has {len(self.p)} samples, mesh has {nc} cells")
        if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(source))):
            raise ValueError("phi and source must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "source", source)

    def with_exponent(self, p):
        return DirichletProblem(self.mesh, p, self.phi, self.source)


@dataclass(frozen=True)
class SolverOptions:
    residual_tol: float = 1e-8
    max_iterations: int = 200
    reg_initial: float = 1e-2
    reg_final: float = 1e-8
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5

    def __post_init__(self):
        for name in ("residual_tol", "max_iterations", "reg_initial", "reg_final",
                     "armijo_c", "backtrack_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.reg_final > self.reg_initial:
            raise ValueError("reg_final must not exceed reg_initial")
        if not self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must be < 1")


@dataclass
class SolveResult:
    w: np.ndarray
    u: np.ndarray
    iterations: int
    final_energy: float
    residual_norm: float
    final_regularization: float
    energy_history: list = field(default_factory=list, repr=False)


class SolverError(RuntimeError):
    """Newton iteration failed; carries the last iterate and its residual."""

    def __init__(self, message, u=None, residual=None):
        super().__init__(message)
        self.u = u
        self.residual = residual


def load_vector(problem):
    """``int f h_k`` for every hat function, with barycentric quadrature."""
    mesh = problem.mesh
    k = mesh.cells.shape[1]
    contrib = (mesh.measures * cell_values(problem.source, mesh) / k)[:, None]
    out = np.zeros(mesh.num_vertices)
    np.add.at(out, mesh.cells, np.broadcast_to(contrib, mesh.cells.shape))
    return out


def _shifted_gradient(u, problem):
    return gradient(np.asarray(u, dtype=float) - problem.phi, problem.mesh)


def energy(u, problem, reg=0.0):
    """Regularized Dirichlet energy of the homogeneous part ``u``."""
    mesh, p = problem.mesh, problem.p.samples
    g = _shifted_gradient(u, problem)
    s = (g ** 2).sum(axis=1) + reg ** 2
    stored = np.dot(mesh.measures / p, s ** (p / 2))
    pairing = np.dot(mesh.measures, cell_values(problem.source, mesh) * cell_values(u, mesh))
    return float(stored - pairing)


def _flux(g, p, reg):
    s = (g ** 2).sum(axis=1) + reg ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = s ** ((p - 2) / 2)
    # 0^(p-2) * 0 := 0 when the gradient vanishes and reg = 0
    coef = np.where(s > 0, coef, 0.0)
    return coef[:, None] * g


def _assemble_vector(mesh, flux):
    local = np.einsum("c,cd,ckd->ck", mesh.measures, flux, mesh.hat_gradients)
    out = np.zeros(mesh.num_vertices)
    np.add.at(out, mesh.cells, local)
    return out


def energy_gradient(u, problem, reg=0.0):
    """Gradient of :func:`energy` with respect to the nodal values of ``u``.

    Boundary components are set to zero.
    """
    mesh = problem.mesh
    g = _shifted_gradient(u, problem)
    grad = _assemble_vector(mesh, _flux(g, problem.p.samples, reg)) - load_vector(problem)
    grad[mesh.boundary] = 0.0
    return grad


def energy_hessian(u, problem, reg):
    """Hessian of :func:`energy` restricted to interior nodes (sparse CSR).

    Each cell contributes ``|T| B^T A B`` with ``B`` the hat gradients and
    ``A = s^(p/2-1) I + (p-2) s^(p/2-2) g g^T``, ``s = |g|^2 + reg^2``.
    """
    mesh, p = problem.mesh, problem.p.samples
    g = _shifted_gradient(u, problem)
    s = (g ** 2).sum(axis=1) + reg ** 2
    a = s ** (p / 2 - 1)
    b = (p - 2) * s ** (p / 2 - 2)
    B = mesh.hat_gradients                                   # (nc, k, d)
    Bg = np.einsum("ckd,cd->ck", B, g)
    local = (a[:, None, None] * np.einsum("ckd,cld->ckl", B, B)
             + b[:, None, None] * Bg[:, :, None] * Bg[:, None, :])
    local *= mesh.measures[:, None, None]
    k = mesh.cells.shape[1]
    rows = np.repeat(mesh.cells, k, axis=1).ravel()
    cols = np.tile(mesh.cells, (1, k)).ravel()
    n = mesh.num_vertices
    H = sp.coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    interior = mesh.interior
    return H[interior][:, interior]


def weak_residual(w, problem):
    """Largest weak-form defect over interior hat functions at ``reg = 0``.

    ``max_k |-int |grad w|^(p-2) grad w . grad h_k - int f h_k|``.
    """
    mesh = problem.mesh
    flux = _flux(gradient(w, mesh), problem.p.samples, 0.0)
    r = -_assemble_vector(mesh, flux) - load_vector(problem)
    return float(np.abs(r[mesh.interior]).max(initial=0.0))


def _newton_direction(u, problem, reg, grad):
    interior = problem.mesh.interior
    H = energy_hessian(u, problem, reg)
    rhs = -grad[interior]
    step = spla.spsolve(H.tocsc(), rhs)
    lin_res = np.linalg.norm(H @ step - rhs)
    if not np.all(np.isfinite(step)) or lin_res > _LINEAR_RTOL * max(np.linalg.norm(rhs), 1e-300):
        raise SolverError(f"Newton system not solved to {_LINEAR_RTOL} (relative residual "
                          f"{lin_res / max(np.linalg.norm(rhs), 1e-300):.3e})", u=u)
    d = np.zeros_like(u)
    d[interior] = step
    return d


def _energy_slack(u, problem, reg):
    # rounding floor of an energy difference
    mesh, p = problem.mesh, problem.p.samples
    g = _shifted_gradient(u, problem)
    s = (g ** 2).sum(axis=1) + reg ** 2
    scale = np.dot(mesh.measures / p, s ** (p / 2)) + np.dot(
        mesh.measures, np.abs(cell_values(problem.source, mesh) * cell_values(u, mesh)))
    return 64 * np.finfo(float).eps * max(scale, 1e-300)


def _line_search(u, d, E0, slope, problem, reg, opts):
    t = 1.0
    slack = _energy_slack(u, problem, reg)
    while t >= _MIN_STEP:
        trial = u + t * d
        E = energy(trial, problem, reg)
        if E <= E0 + opts.armijo_c * t * slope + slack:
            return trial, E
        t *= opts.backtrack_factor
    return None, E0


def solve_dirichlet(problem, opts=None, u0=None):
    """Minimize the Dirichlet energy and return ``w = phi - u``.

    Parameters
    ----------
    problem : DirichletProblem
    opts : SolverOptions, optional
    u0 : array_like, optional
        Initial homogeneous part; boundary values are overwritten with 0.

    Raises
    ------
    SolverError
        If ``opts.max_iterations`` Newton steps (counted over all
        regularization stages) are exhausted, or no descent step exists.
    """
    opts = opts or SolverOptions()
    mesh = problem.mesh
    u = np.zeros(mesh.num_vertices) if u0 is None else np.array(u0, dtype=float)
    u[mesh.boundary] = 0.0
    iterations = 0
    history = []
    reg = opts.reg_initial
    while True:
        E = energy(u, problem, reg)
        history.append((reg, E))
        polished = False
        while True:
            grad = energy_gradient(u, problem, reg)
            res = float(np.abs(grad).max(initial=0.0))
            converged = res <= opts.residual_tol
            # one Newton step per stage even when the warm start already meets
            # the tolerance; it is nearly free and tightens the nodal error
            if converged and (polished or res == 0.0):
                break
            if iterations >= opts.max_iterations:
                if converged:
                    break
                raise SolverError(
                    f"no convergence after {iterations} iterations "
                    f"(reg={reg:.1e}, residual={res:.3e})", u=u, residual=res)
            iterations += 1
            polished = True
            d = _newton_direction(u, problem, reg, grad)
            slope = float(np.dot(grad, d))
            new, E_new = (None, E) if slope >= 0 else _line_search(u, d, E, slope, problem, reg, opts)
            if new is None and not converged:
                log.debug("Newton step rejected at reg=%g, falling back to gradient step", reg)
                new, E_new = _line_search(u, -grad, E, -float(np.dot(grad, grad)), problem, reg, opts)
                if new is None:
                    raise SolverError(f"line search failed (reg={reg:.1e}, residual={res:.3e})",
                                      u=u, residual=res)
            if new is None:
                break
            u, E = new, E_new
            history.append((reg, E))
        log.debug("reg=%g converged: residual %.3e after %d iterations", reg, res, iterations)
        if reg <= opts.reg_final:
            break
        reg = max(reg / 10.0, opts.reg_final)
    return SolveResult(
        w=problem.phi - u,
        u=u,
        iterations=iterations,
        final_energy=E,
        residual_norm=res,
        final_regularization=reg,
        energy_history=history,
    )
