import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varexp.mesh import build_mesh, cell_values, gradient, integrate, interval, rectangle


def test_interval_measures():
    m = interval(0, 1, 4)
    assert m.num_cells == 4
    np.testing.assert_allclose(m.measures, 0.25)
    assert m.volume == 1.0
    assert m.boundary.tolist() == [True, False, False, False, True]


def test_rectangle_measures():
    m = rectangle(0, 0, 1, 1, 2)
    assert m.num_cells == 8
    np.testing.assert_allclose(m.measures, 0.125)
    assert m.volume == pytest.approx(1.0, rel=1e-12)


def test_rectangle_boundary_flags():
    m = rectangle(-1, 0, 2, 3, 5)
    x, y = m.vertices.T
    on_edge = np.isclose(x, -1) | np.isclose(x, 2) | np.isclose(y, 0) | np.isclose(y, 3)
    assert np.array_equal(m.boundary, on_edge)
    assert m.volume == pytest.approx(9.0, rel=1e-12)
    assert np.all(m.measures > 0)


@pytest.mark.parametrize("domain", [("interval", 0, 0), ("interval", 1, 0),
                                    ("rectangle", 0, 0, 1, 0), ("rectangle", 0, 0, 0, 1)])
def test_degenerate_domain(domain):
    with pytest.raises(ValueError, match="degenerate"):
        build_mesh(domain, 4)


def test_bad_n():
    with pytest.raises(ValueError):
        interval(0, 1, 0)


def test_gradient_of_x1_on_triangles():
    m = rectangle(0, 0, 1, 1, 3)
    g = gradient(m.vertices[:, 0], m)
    np.testing.assert_allclose(g, np.tile([1.0, 0.0], (m.num_cells, 1)), atol=1e-12)


def test_gradient_of_constant():
    m = rectangle(0, 0, 2, 1, 4)
    assert np.abs(gradient(np.full(m.num_vertices, 3.7), m)).max() < 1e-12


def test_gradient_of_square_on_interval():
    m = interval(0, 1, 7)
    x = m.vertices[:, 0]
    np.testing.assert_allclose(gradient(x ** 2, m)[:, 0], x[:-1] + x[1:], rtol=1e-12)


def test_integrate_examples():
    m = interval(0, 1, 4)
    assert integrate(np.ones(4), m) == 1.0
    assert integrate(m.barycenters[:, 0], m) == pytest.approx(0.5, rel=1e-15)
    assert integrate(np.zeros(4), m) == 0.0


def test_cell_values_are_vertex_means():
    m = rectangle(0, 0, 1, 1, 2)
    u = np.arange(m.num_vertices, dtype=float)
    np.testing.assert_allclose(cell_values(u, m), u[m.cells].mean(axis=1))


coef = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(a=coef, b=coef, c=coef, n=st.integers(1, 6))
def test_affine_exactness_2d(a, b, c, n):
    m = rectangle(-0.5, 0.2, 1.3, 2.0, n)
    x, y = m.vertices.T
    g = gradient(a * x + b * y + c, m)
    np.testing.assert_allclose(g[:, 0], a, atol=1e-12 * (1 + abs(a) + abs(b) + abs(c)))
    np.testing.assert_allclose(g[:, 1], b, atol=1e-12 * (1 + abs(a) + abs(b) + abs(c)))
    bx, by = m.barycenters.T
    exact = (a * (1.3 ** 2 - 0.25) / 2 * 1.8 + b * (4.0 - 0.04) / 2 * 1.8 + c * 1.8 * 1.8)
    got = integrate(a * bx + b * by + c, m)
    assert got == pytest.approx(exact, rel=1e-12, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(a=coef, b=coef, seed=st.integers(0, 2 ** 16))
def test_gradient_linearity(a, b, seed):
    m = rectangle(0, 0, 1, 1, 3)
    rng = np.random.default_rng(seed)
    u, v = rng.standard_normal((2, m.num_vertices))
    lhs = gradient(a * u + b * v, m)
    rhs = a * gradient(u, m) + b * gradient(v, m)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * (1 + abs(a) + abs(b)) * 20)
