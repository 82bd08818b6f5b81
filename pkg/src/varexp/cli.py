"""Command line front end.

    varexp norm --config F
    varexp solve --config F --out F
    varexp stability --config F --out F
    varexp check --suite NAME --trials N --seed S --out F

Exit status is 0 iff every postcondition or ``satisfied`` flag holds.  On
failure a single ``error: <kind>: <detail>`` line goes to stderr.
"""

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from .checks import SUITES, rows_to_csv, run_suite
from .config import ConfigError, load_config
from .exponent import build_exponent, make_schedule
from .expression import Expression, ExpressionError
from .mesh import build_mesh, interpolate
from .modular import luxemburg_norm
from .solver import DirichletProblem, SolverError, solve_dirichlet
from .stability import StabilityError, run_stability

__all__ = ["main", "solution_csv", "summary_csv"]


class _Failure(Exception):
    def __init__(self, kind, detail):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind


def _g(x):
    return format(float(x), ".17g")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def solution_csv(mesh, w):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex_id", "x", "y", "w"])
    for k, (pt, value) in enumerate(zip(mesh.vertices, w)):
        y = pt[1] if mesh.dimension == 2 else 0.0
        writer.writerow([k, _g(pt[0]), _g(y), _g(value)])
    return buf.getvalue()


def summary_csv(result):
    return ("iterations,final_energy,residual_norm,final_regularization\n"
            f"{result.iterations},{_g(result.final_energy)},{_g(result.residual_norm)},"
            f"{_g(result.final_regularization)}\n")


def _summary_path(out):
    out = Path(out)
    return out.with_name(out.stem + ".summary.csv")


def _config(path, command):
    try:
        return load_config(path).require(command)
    except OSError as exc:
        raise _Failure("io", str(exc)) from None


def _setup(config, with_phi=True):
    mesh = build_mesh(config.domain, config.n)
    try:
        p = build_exponent(config.p, mesh)
    except ValueError as exc:
        raise _Failure("exponent", str(exc)) from None
    if not with_phi:
        return mesh, p, None
    phi = interpolate(Expression(config.phi), mesh)
    source = interpolate(Expression(config.f), mesh)
    return mesh, p, DirichletProblem(mesh, p, phi, source)


def cmd_norm(args):
    config = _config(args.config, "norm")
    mesh, p, _ = _setup(config, with_phi=False)
    values = Expression(config.f)(mesh.barycenters)
    if not np.all(np.isfinite(values)):
        raise _Failure("expression", f"f = {config.f!r} is not finite on the mesh")
    print(_g(luxemburg_norm(values, p, mesh).value))
    return 0


def cmd_solve(args):
    config = _config(args.config, "solve")
    mesh, _, problem = _setup(config)
    try:
        result = solve_dirichlet(problem, config.solver)
    except SolverError as exc:
        raise _Failure("solver", str(exc)) from None
    _write(args.out, solution_csv(mesh, result.w))
    _write(_summary_path(args.out), summary_csv(result))
    print(summary_csv(result), end="")
    if result.residual_norm > config.solver.residual_tol:
        raise _Failure("solver", f"residual {result.residual_norm:.3e} above tolerance")
    return 0


def cmd_stability(args):
    config = _config(args.config, "stability")
    _, p, problem = _setup(config)
    try:
        schedule = make_schedule(p, config.direction, config.N, config.c1)
        report = run_stability(problem, schedule, config.solver)
    except ValueError as exc:
        raise _Failure("schedule", str(exc)) from None
    except StabilityError as exc:
        raise _Failure("solver", str(exc)) from None
    _write(args.out, report.to_csv())
    values = np.array([r.values() for r in report.rows], dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise _Failure("report", "non-finite or negative entries in stability report")
    return 0


def cmd_check(args):
    rows = run_suite(args.suite, args.trials, args.seed)
    _write(args.out, rows_to_csv(rows))
    failed = [r for r in rows if not r.satisfied]
    if failed:
        r = failed[0]
        raise _Failure("check-failed",
                       f"{len(failed)} of {len(rows)} rows violated; first {r.check_name} trial {r.trial}")
    return 0


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="varexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("norm", help="Luxemburg norm of the f expression under p")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_norm)
    for name, func, text in (("solve", cmd_solve, "solve the Dirichlet problem"),
                             ("stability", cmd_stability, "run an exponent schedule")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)
    p = sub.add_parser("check", help="randomized inequality suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", required=True, type=_positive)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
    except ExpressionError as exc:
        print(f"error: expression: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: value: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
