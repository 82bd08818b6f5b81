"""Variable exponent fields sampled at cell barycenters, and their schedules."""

from dataclasses import dataclass, field

import numpy as np

from .expression import Expression

__all__ = [
    "ExponentField", "ExponentSchedule", "build_exponent",
    "log_holder_constant", "make_schedule", "FLOOR_MARGIN",
]

FLOOR_MARGIN = 0.05


@dataclass(frozen=True)
class ExponentField:
    """Exponent samples, one per cell barycenter.

    Construction enforces ``1 < p_minus <= p_plus < inf``.
    """

    samples: np.ndarray
    p_minus: float = field(init=False)
    p_plus: float = field(init=False)

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float).ravel()
        if samples.size == 0:
            raise ValueError("exponent field needs at least one sample")
        bad = np.flatnonzero(~np.isfinite(samples))
        if bad.size:
            raise ValueError(f"exponent is not finite at node {bad[0]}")
        bad = np.flatnonzero(samples <= 1.0)
        if bad.size:
            k = int(bad[0])
            raise ValueError(f"exponent must exceed 1: sample {samples[k]!r} <= 1 at node {k}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "p_minus", float(samples.min()))
        object.__setattr__(self, "p_plus", float(samples.max()))

    def __len__(self):
        return self.samples.size

    @property
    def is_constant(self):
        return self.p_minus == self.p_plus

    @classmethod
    def constant(cls, value, mesh):
        return cls(np.full(mesh.num_cells, float(value)))


def build_exponent(expr, mesh):
    """Evaluate an expression string at the barycenters of ``mesh``.

    Raises ``ValueError`` (``ExpressionError`` for grammar problems) when
    the expression cannot be parsed or any sample is not above 1; the message
    names the offending node and its coordinates.
    """
    expression = expr if isinstance(expr, Expression) else Expression(expr)
    values = expression(mesh.barycenters)
    bad = np.flatnonzero(~np.isfinite(values) | (values <= 1.0))
    if bad.size:
        k = int(bad[0])
        raise ValueError(
            f"exponent {expression.text!r} is {values[k]!r} <= 1 (or not finite) at node {k} "
            f"{mesh.barycenters[k].tolist()}")
    return ExponentField(values)


def log_holder_constant(p, mesh, chunk=2048):
    """Estimate the smallest log-Hoelder constant from sampled node pairs.

    Returns ``max |p(x) - p(y)| * |log |x - y||`` over distinct barycenters
    ``x``, ``y``.  The result is a lower bound for any admissible constant,
    not a certificate.  Pairs at distance 1 contribute 0.
    """
    pts = mesh.barycenters
    vals = p.samples
    m = pts.shape[0]
    if m < 2:
        raise ValueError("need at least two quadrature nodes")
    best = 0.0
    for start in range(0, m, chunk):
        stop = min(start + chunk, m)
        dist = np.sqrt(((pts[start:stop, None, :] - pts[None, :, :]) ** 2).sum(-1))
        jump = np.abs(vals[start:stop, None] - vals[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            term = jump * np.abs(np.log(dist))
        term[dist == 0.0] = 0.0
        best = max(best, float(term.max()))
    return best


@dataclass(frozen=True)
class ExponentSchedule:
    """Monotone sequence of exponent fields converging uniformly to ``base``."""

    direction: str
    base: ExponentField
    offsets: tuple
    fields: tuple

    @property
    def count(self):
        return len(self.offsets)

    def __iter__(self):
        return iter(self.fields)

    def __getitem__(self, i):
        return self.fields[i]

    def sup_gaps(self):
        return [float(np.max(np.abs(f.samples - self.base.samples))) for f in self.fields]


def make_schedule(base, direction, N, c1):
    """Schedule ``p_i = base -/+ c1 / i`` for ``i = 1..N``.

    ``direction`` is ``"increasing"`` (fields rise to ``base`` from below) or
    ``"decreasing"`` (fields fall to ``base`` from above).  Increasing
    schedules must keep every sample at least ``1 + FLOOR_MARGIN``.
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be 'increasing' or 'decreasing', got {direction!r}")
    N = int(N)
    if N < 1:
        raise ValueError(f"schedule length must be >= 1, got {N}")
    if not c1 > 0:
        raise ValueError(f"c1 must be positive, got {c1}")
    offsets = tuple(c1 / i for i in range(1, N + 1))
    sign = -1.0 if direction == "increasing" else 1.0
    if direction == "increasing":
        lowest = base.p_minus - c1
        if lowest < 1.0 + FLOOR_MARGIN:
            k = int(np.argmin(base.samples))
            raise ValueError(
                f"increasing schedule drives sample {lowest!r} at node {k} below "
                f"1 + {FLOOR_MARGIN} (exponent must stay > 1)")
    fields = tuple(ExponentField(base.samples + sign * c) for c in offsets)
    return ExponentSchedule(direction, base, offsets, fields)
