import numpy as np
import pytest

from conftest import make_problem
from varexp.exponent import ExponentField, make_schedule
from varexp.mesh import interval, rectangle
from varexp.solver import SolverOptions
from varexp.stability import REPORT_COLUMNS, diagnostics_row, run_stability


@pytest.fixture(scope="module")
def one_d_increasing():
    m = interval(0, 1, 256)
    pr = make_problem(m, 2, f="1")
    return pr, run_stability(pr, make_schedule(pr.p, "increasing", 6, 0.5))


@pytest.mark.parametrize("direction", ["increasing", "decreasing"])
def test_harmonic_datum_is_stable_exactly(direction):
    m = rectangle(0, 0, 1, 1, 8)
    pr = make_problem(m, 2, phi="x")
    rep = run_stability(pr, make_schedule(pr.p, direction, 4, 0.4))
    assert rep.column("D_grad_modular").max() <= 1e-10
    assert rep.column("lux_norm_diff").max() <= 1e-10


def test_vanishing_perturbation_is_solver_noise():
    m = interval(0, 1, 64)
    pr = make_problem(m, "2 + x", phi="x^2", f="1")
    opts = SolverOptions()
    rep = run_stability(pr, make_schedule(pr.p, "decreasing", 3, 4e-16), opts)
    for name in ("D_grad_modular", "lux_norm_diff", "modular_gap"):
        assert rep.column(name).max() <= 10 * opts.residual_tol


def test_increasing_trend(one_d_increasing):
    pr, rep = one_d_increasing
    D = rep.column("D_grad_modular")
    assert np.all(np.diff(D) < 0)
    assert D[-1] < 1e-3
    x = pr.mesh.vertices[:, 0]
    np.testing.assert_allclose(rep.limit_solution.w, (x ** 2 - x) / 2, atol=1e-10)
    np.testing.assert_allclose(rep.column("sup_gap"), 0.5 / np.arange(1, 7), rtol=1e-12)


def test_trend_is_mesh_independent(one_d_increasing):
    _, fine = one_d_increasing
    m = interval(0, 1, 128)
    pr = make_problem(m, 2, f="1")
    coarse = run_stability(pr, make_schedule(pr.p, "increasing", 6, 0.5))
    np.testing.assert_allclose(coarse.column("D_grad_modular"), fine.column("D_grad_modular"),
                               rtol=1e-2)


def test_rows_match_independent_quadrature(one_d_increasing):
    pr, rep = one_d_increasing
    m = pr.mesh
    h = np.diff(m.vertices[:, 0])
    w = rep.limit_solution.w
    for row, sol in zip(rep.rows, rep.solutions):
        p_i = 2.0 - 0.5 / row.i
        slope_diff = np.diff(sol.w - w) / h
        assert row.D_grad_modular == pytest.approx(np.sum(np.abs(slope_diff) ** p_i * h), rel=1e-12)
        slopes = np.diff(sol.w) / h
        weighted = np.sum(np.abs(slopes) ** p_i / p_i * h)
        assert row.energy_modular_i == pytest.approx(weighted, rel=1e-12)
        assert row.modular_i == pytest.approx(np.sum(np.abs(slopes) ** p_i * h), rel=1e-12)
        assert row.modular_limit == pytest.approx(np.sum((np.diff(w) / h) ** 2 * h), rel=1e-12)


def test_weighted_and_unweighted_gaps_decrease_together(one_d_increasing):
    _, rep = one_d_increasing
    assert np.all(np.diff(rep.column("modular_gap")) < 0)
    assert np.all(np.diff(rep.column("weighted_gap")) < 0)


def test_diagnostics_identical_inputs():
    m = interval(0, 1, 16)
    pr = make_problem(m, "2 + x", f="1")
    w = np.sin(np.linspace(0, 3, 17))
    row = diagnostics_row(1, w, w, pr.p, pr.p, pr)
    assert row.modular_gap == 0 and row.D_grad_modular == 0 and row.lux_norm_diff == 0
    assert row.sup_gap == 0


def test_diagnostics_constant_exponent_weight():
    m = interval(0, 1, 16)
    p = ExponentField.constant(3.0, m)
    pr = make_problem(m, p)
    rng = np.random.default_rng(3)
    w_i, w = rng.standard_normal((2, 17))
    row = diagnostics_row(2, w_i, w, p, p, pr)
    assert row.energy_modular_i == pytest.approx(row.modular_i / 3.0, rel=1e-15)
    assert row.energy_modular_limit == pytest.approx(row.modular_limit / 3.0, rel=1e-15)


def test_csv_layout(one_d_increasing):
    _, rep = one_d_increasing
    text = rep.to_csv()
    lines = text.split("\n")
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert len(lines) == 8 and lines[-1] == ""
    assert "\r" not in text
    assert lines[1].startswith("1,0.5,")


def test_parallel_matches_serial():
    m = interval(0, 1, 64)
    pr = make_problem(m, 2, f="1")
    s = make_schedule(pr.p, "decreasing", 4, 0.5)
    assert run_stability(pr, s, workers=4).to_csv() == run_stability(pr, s).to_csv()


def test_modular_gap_matches_continuum_closed_form(one_d_increasing):
    # w_i' = sign(t) |t|^(1/(p_i - 1)), t = x - 1/2, so
    # int |w_i'|^p_i = (1/2)^q / (q + 1) with q = p_i / (p_i - 1); the limit is 1/12
    _, rep = one_d_increasing
    p_i = 2.0 - 0.5 / np.arange(1, 7)
    q = p_i / (p_i - 1)
    exact = np.abs(0.5 ** q / (q + 1) - 1 / 12)
    np.testing.assert_allclose(rep.column("modular_gap"), exact, atol=2e-6)
