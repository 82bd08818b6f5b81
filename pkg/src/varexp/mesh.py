"""Structured P1 meshes on intervals and rectangles.

A :class:`Mesh` carries everything the rest of the package needs: vertex
coordinates, cell connectivity, boundary flags, cell measures, barycenters
(the single quadrature node of each cell) and the constant gradients of the
P1 hat functions on every cell.

Nodal fields are plain float arrays of length ``mesh.num_vertices``; cellwise
quantities are arrays whose first axis has length ``mesh.num_cells``.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Mesh", "interval", "rectangle", "build_mesh",
    "gradient", "integrate", "cell_values", "interpolate",
]


@dataclass(frozen=True)
class Mesh:
    dimension: int
    vertices: np.ndarray        # (nv, d)
    cells: np.ndarray           # (nc, d + 1) vertex indices
    boundary: np.ndarray        # (nv,) bool
    measures: np.ndarray        # (nc,)
    barycenters: np.ndarray     # (nc, d)
    hat_gradients: np.ndarray   # (nc, d + 1, d)

    @property
    def num_vertices(self):
        return self.vertices.shape[0]

    @property
    def num_cells(self):
        return self.cells.shape[0]

    @property
    def volume(self):
        """|Omega|, the sum of the cell measures."""
        return float(self.measures.sum())

    @property
    def interior(self):
        return np.flatnonzero(~self.boundary)

    @property
    def h(self):
        """Largest cell diameter."""
        v = self.vertices[self.cells]
        diffs = v[:, :, None, :] - v[:, None, :, :]
        return float(np.sqrt((diffs ** 2).sum(-1)).max())


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def _finish(dimension, vertices, cells, boundary):
    coords = vertices[cells]                          # (nc, d+1, d)
    edges = coords[:, 1:, :] - coords[:, :1, :]       # (nc, d, d), rows are edge vectors
    det = np.linalg.det(edges)
    if dimension == 1:
        measures = np.abs(det)
    else:
        measures = 0.5 * np.abs(det)
    # gradients of barycentric coordinates: lambda_1..d come from inv(edges)^T
    inv = np.linalg.inv(edges)                         # (nc, d, d)
    grads_rest = np.transpose(inv, (0, 2, 1))          # grad lambda_k = column k of inv
    grads_first = -grads_rest.sum(axis=1, keepdims=True)
    hat_gradients = np.concatenate([grads_first, grads_rest], axis=1)
    barycenters = coords.mean(axis=1)
    mesh = Mesh(dimension, vertices, cells, boundary, measures, barycenters, hat_gradients)
    _freeze(vertices, cells, boundary, measures, barycenters, hat_gradients)
    return mesh


def interval(a, b, n):
    """Uniform partition of (a, b) into ``n`` segments."""
    n = int(n)
    if n < 1:
        raise ValueError(f"need at least one cell, got n={n}")
    if not b > a:
        raise ValueError(f"degenerate domain: interval({a}, {b}) has no length")
    vertices = np.linspace(a, b, n + 1)[:, None]
    cells = np.column_stack([np.arange(n), np.arange(1, n + 1)])
    boundary = np.zeros(n + 1, dtype=bool)
    boundary[[0, -1]] = True
    return _finish(1, vertices, cells, boundary)


def rectangle(ax, ay, bx, by, n):
    """Structured triangulation of [ax, bx] x [ay, by].

    The rectangle is cut into an ``n`` x ``n`` grid and every grid square is
    split into two triangles along the diagonal from its lower-left to its
    upper-right corner, giving ``2 n**2`` cells.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"need at least one cell per side, got n={n}")
    if not (bx > ax and by > ay):
        raise ValueError(f"degenerate domain: rectangle({ax}, {ay}, {bx}, {by}) has no area")
    xs = np.linspace(ax, bx, n + 1)
    ys = np.linspace(ay, by, n + 1)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    vertices = np.column_stack([X.ravel(), Y.ravel()])
    idx = np.arange((n + 1) ** 2).reshape(n + 1, n + 1)   # idx[j, i] -> (x_i, y_j)
    ll = idx[:-1, :-1].ravel()
    lr = idx[:-1, 1:].ravel()
    ul = idx[1:, :-1].ravel()
    ur = idx[1:, 1:].ravel()
    lower = np.column_stack([ll, lr, ur])
    upper = np.column_stack([ll, ur, ul])
    cells = np.stack([lower, upper], axis=1).reshape(-1, 3)
    on_edge = np.zeros((n + 1, n + 1), dtype=bool)
    on_edge[[0, -1], :] = True
    on_edge[:, [0, -1]] = True
    return _finish(2, vertices, cells, on_edge.ravel())


def build_mesh(domain, n):
    """Build a mesh from a domain tuple.

    ``domain`` is ``("interval", a, b)`` or ``("rectangle", ax, ay, bx, by)``.
    """
    kind, *bounds = domain
    if kind == "interval":
        return interval(*bounds, n)
    if kind == "rectangle":
        return rectangle(*bounds, n)
    raise ValueError(f"unknown domain kind {kind!r}")


def gradient(u, mesh):
    """Cellwise constant gradient of the P1 interpolant of nodal values ``u``.

    Returns an array of shape (num_cells, d).
    """
    u = np.asarray(u, dtype=float)
    return np.einsum("ck,ckd->cd", u[mesh.cells], mesh.hat_gradients)


def integrate(values, mesh):
    """One-point barycentric quadrature of cellwise values."""
    return float(np.dot(np.asarray(values, dtype=float), mesh.measures))


def cell_values(u, mesh):
    """Values of the P1 interpolant of ``u`` at the cell barycenters."""
    return np.asarray(u, dtype=float)[mesh.cells].mean(axis=1)


def interpolate(func, mesh):
    """Nodal values of ``func`` (callable on (m, d) point arrays)."""
    values = np.asarray(func(mesh.vertices), dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise ValueError(f"non-finite value at vertex {bad} {mesh.vertices[bad].tolist()}")
    return values
