import numpy as np
import pytest

from varexp.exponent import ExponentField, build_exponent
from varexp.expression import Expression
from varexp.mesh import interpolate, interval, rectangle
from varexp.solver import DirichletProblem


def make_problem(mesh, p, phi="0", f="0"):
    if isinstance(p, str):
        p = build_exponent(p, mesh)
    elif not isinstance(p, ExponentField):
        p = ExponentField.constant(p, mesh)
    return DirichletProblem(mesh, p, interpolate(Expression(phi), mesh),
                            interpolate(Expression(f), mesh))


@pytest.fixture
def unit_square():
    return rectangle(0, 0, 1, 1, 8)


@pytest.fixture
def unit_interval():
    return interval(0, 1, 32)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    def record(label, passed, detail):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
