"""Modulars, Luxemburg norms and the variable exponent inequality checks.

All functions take cellwise values (one per cell barycenter) together with an
:class:`~varexp.exponent.ExponentField` and a mesh, and integrate with the
one-point barycentric rule.  Vector-valued cell data of shape (nc, d) is
reduced to its Euclidean norm first.

The ``*_gap`` functions evaluate both sides of an inequality independently
and return a :class:`GapReport`.
"""

from dataclasses import dataclass

import numpy as np

from .exponent import ExponentField
from .mesh import cell_values, gradient, integrate

__all__ = [
    "GapReport", "NormResult", "GAP_RTOL",
    "magnitude", "modular", "weighted_modular", "luxemburg_norm", "sobolev_norm",
    "conjugate", "holder_gap", "epsilon_bound_gap", "norm_modular_gap",
    "embedding_constant", "embedding_gap", "convexity_gap",
]

GAP_RTOL = 1e-12


@dataclass(frozen=True)
class GapReport:
    lhs: float
    rhs: float
    satisfied: bool
    note: str = ""

    @classmethod
    def compare(cls, lhs, rhs, note=""):
        lhs, rhs = float(lhs), float(rhs)
        return cls(lhs, rhs, bool(lhs <= rhs + GAP_RTOL * max(1.0, abs(rhs))), note)


@dataclass(frozen=True)
class NormResult:
    value: float
    modular_at_value: float
    bisection_iterations: int

    def __float__(self):
        return self.value


def magnitude(values):
    """Pointwise absolute value; Euclidean norm along the last axis for 2-D input."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 2:
        return np.sqrt((values ** 2).sum(axis=1))
    return np.abs(values)


def _power(a, p):
    with np.errstate(over="ignore"):
        return a ** p


def modular(f_cells, p, mesh):
    """Integral of ``|f|^p``."""
    return integrate(_power(magnitude(f_cells), p.samples), mesh)


def weighted_modular(f_cells, p, mesh):
    """Integral of ``|f|^p / p``."""
    return integrate(_power(magnitude(f_cells), p.samples) / p.samples, mesh)


def luxemburg_norm(f_cells, p, mesh, rtol=1e-10):
    """Luxemburg norm ``inf{lam > 0 : modular(f / lam) <= 1}``.

    The map ``lam -> modular(f / lam)`` is continuous and strictly decreasing
    for ``f != 0``, so the root is found by bisection.  The initial bracket
    guess ``max|f| * |Omega|^(1/p_plus)`` is widened by factors of 2 until it
    straddles the unit level.  Bisection stops when the bracket is narrower
    than ``rtol`` relative to its upper end, or at float resolution; the upper
    end is returned so that ``modular_at_value <= 1`` always holds.
    """
    a = magnitude(f_cells)
    top = float(a.max(initial=0.0))
    if top == 0.0:
        return NormResult(0.0, 0.0, 0)
    # scale out max|f| so that powers stay in range
    a = a / top
    w = mesh.measures
    q = p.samples

    def rho(lam):
        with np.errstate(over="ignore"):
            return float(np.dot((a / lam) ** q, w))

    guess = max(mesh.volume ** (1.0 / p.p_plus), np.finfo(float).tiny)
    lo = hi = guess
    while rho(hi) > 1.0:
        hi *= 2.0
    while rho(lo) <= 1.0:
        lo *= 0.5
    iterations = 0
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        iterations += 1
        if rho(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return NormResult(hi * top, rho(hi), iterations)


def sobolev_norm(u, p, mesh, rtol=1e-10):
    """``||u||_p + || |grad u| ||_p`` for nodal values ``u``."""
    value = luxemburg_norm(cell_values(u, mesh), p, mesh, rtol).value
    grad = luxemburg_norm(gradient(u, mesh), p, mesh, rtol).value
    return value + grad


def conjugate(p):
    """Pointwise conjugate exponent ``p / (p - 1)``."""
    return ExponentField(p.samples / (p.samples - 1.0))


def holder_gap(u_cells, v_cells, p, mesh):
    """``int |uv| <= 2 ||u||_p ||v||_q`` with ``q`` conjugate to ``p``."""
    q = conjugate(p)
    lhs = integrate(magnitude(u_cells) * magnitude(v_cells), mesh)
    rhs = 2.0 * luxemburg_norm(u_cells, p, mesh).value * luxemburg_norm(v_cells, q, mesh).value
    return GapReport.compare(lhs, rhs)


def _check_ordering(p, q, eps):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    slack = 4 * np.finfo(float).eps * np.maximum(1.0, q.samples)
    d = q.samples - p.samples
    if np.any(d < -slack) or np.any(d > eps + slack):
        k = int(np.flatnonzero((d < -slack) | (d > eps + slack))[0])
        raise ValueError(
            f"exponents must satisfy p <= q <= p + eps; at node {k}: "
            f"p={p.samples[k]!r}, q={q.samples[k]!r}, eps={eps!r}")


def epsilon_bound_gap(f_cells, p, q, eps, mesh, weighted=False):
    """Compare ``int |f|^p`` with ``eps |Omega| + eps^-eps int |f|^q``.

    With ``weighted=True`` both modulars carry their ``1/p``, ``1/q`` weights
    and the ``q``-term gains the factor ``1 + eps``.
    Requires ``0 < eps < 1`` and ``p <= q <= p + eps`` at every node.
    """
    _check_ordering(p, q, eps)
    if weighted:
        lhs = weighted_modular(f_cells, p, mesh)
        rhs = eps * mesh.volume + eps ** -eps * (1.0 + eps) * weighted_modular(f_cells, q, mesh)
    else:
        lhs = modular(f_cells, p, mesh)
        rhs = eps * mesh.volume + eps ** -eps * modular(f_cells, q, mesh)
    return GapReport.compare(lhs, rhs)


def norm_modular_gap(u_cells, p, mesh):
    """``||u||_p <= max(rho^(1/p_plus), rho^(1/p_minus))`` with ``rho = int |u|^p``.

    ``note`` records which exponent realizes the bound: ``"p_plus"`` when the
    modular is at most 1, ``"p_minus"`` otherwise.  The norm is resolved to
    float precision because the bound is attained for constant exponents.
    """
    rho = modular(u_cells, p, mesh)
    lhs = luxemburg_norm(u_cells, p, mesh, rtol=0.0).value
    rhs = max(rho ** (1.0 / p.p_plus), rho ** (1.0 / p.p_minus))
    return GapReport.compare(lhs, rhs, "p_plus" if rho <= 1.0 else "p_minus")


def embedding_constant(eps, measure):
    """``eps * measure + eps^-eps``, bounding ``||g||_p / ||g||_q`` for ``p <= q <= p + eps``."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not measure > 0:
        raise ValueError(f"measure must be positive, got {measure}")
    return eps * measure + eps ** -eps


def embedding_gap(g_cells, p, q, eps, mesh):
    """``||g||_p <= embedding_constant(eps, |Omega|) ||g||_q``."""
    _check_ordering(p, q, eps)
    lhs = luxemburg_norm(g_cells, p, mesh, rtol=0.0).value
    rhs = embedding_constant(eps, mesh.volume) * luxemburg_norm(g_cells, q, mesh, rtol=0.0).value
    return GapReport.compare(lhs, rhs)


def convexity_gap(u_cells, v_cells, p, mesh):
    """Midpoint convexity of ``rho(g) = int |g|^p / p``.

    ``lhs = rho((u + v)/2)``, ``rhs = (rho(u) + rho(v))/2``.  When
    ``rho((u - v)/2) > 0`` the inequality must be strict for the report to
    count as satisfied.
    """
    u = np.asarray(u_cells, dtype=float)
    v = np.asarray(v_cells, dtype=float)
    lhs = weighted_modular(0.5 * (u + v), p, mesh)
    rhs = 0.5 * (weighted_modular(u, p, mesh) + weighted_modular(v, p, mesh))
    report = GapReport.compare(lhs, rhs)
    if weighted_modular(0.5 * (u - v), p, mesh) > 0.0:
        return GapReport(report.lhs, report.rhs, report.lhs < report.rhs, "strict")
    return report
