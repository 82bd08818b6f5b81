"""Flat ``key = value`` run configuration."""

from dataclasses import dataclass, field, fields

from .checks import SUITES
from .expression import Expression, ExpressionError
from .solver import SolverOptions

__all__ = ["ConfigError", "RunConfig", "parse_config", "load_config", "REQUIRED_KEYS"]

REQUIRED_KEYS = {
    "norm": ("domain", "n", "p", "f"),
    "solve": ("domain", "n", "p", "phi", "f"),
    "stability": ("domain", "n", "p", "phi", "f", "direction", "N", "c1"),
    "check": ("suite", "trials", "seed"),
}



class ConfigError(ValueError):
    def __init__(self, message, line=None, key=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.key = key


@dataclass
class RunConfig:
    domain: tuple = None
    n: int = None
    p: str = None
    phi: str = None
    f: str = None
    solver: SolverOptions = field(default_factory=SolverOptions)
    direction: str = None
    N: int = None
    c1: float = None
    suite: str = None
    trials: int = None
    seed: int = None
    out: str = None

    def require(self, command):
        missing = [k for k in REQUIRED_KEYS[command] if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"missing required key {missing[0]!r} for {command}", key=missing[0])
        return self


def _domain(text):
    parts = text.split()
    if not parts:
        raise ValueError("empty domain")
    kind, nums = parts[0], [float(v) for v in parts[1:]]
    if kind == "interval" and len(nums) == 2:
        if not nums[1] > nums[0]:
            raise ValueError("degenerate interval")
    elif kind == "rectangle" and len(nums) == 4:
        if not (nums[2] > nums[0] and nums[3] > nums[1]):
            raise ValueError("degenerate rectangle")
    else:
        raise ValueError("expected 'interval a b' or 'rectangle ax ay bx by'")
    return (kind, *nums)


def _expression(text):
    Expression(text)
    return text


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise ValueError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise ValueError(f"must be positive, got {value}")
    return value


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


_PARSERS = {
    "domain": _domain,
    "n": _positive_int,
    "p": _expression,
    "phi": _expression,
    "f": _expression,
    "direction": _choice(("increasing", "decreasing")),
    "N": _positive_int,
    "c1": _positive_float,
    "suite": _choice(SUITES),
    "trials": _positive_int,
    "seed": int,
    "out": str,
}
_SOLVER_KEYS = {f.name: (int if f.name == "max_iterations" else float) for f in fields(SolverOptions)}


def parse_config(text):
    """Parse config text; ``#`` starts a comment.  Errors carry line numbers."""
    config = RunConfig()
    solver_values = {}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key]})", lineno, key)
        seen[key] = lineno
        if key in _PARSERS:
            parser = _PARSERS[key]
        elif key in _SOLVER_KEYS:
            parser = _SOLVER_KEYS[key]
        else:
            raise ConfigError(f"unknown key {key!r}", lineno, key)
        try:
            parsed = parser(value)
        except (ValueError, ExpressionError) as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", lineno, key) from None
        if key in _SOLVER_KEYS:
            solver_values[key] = parsed
        else:
            setattr(config, key, parsed)
    if solver_values:
        try:
            config.solver = SolverOptions(**solver_values)
        except ValueError as exc:
            key = next(iter(solver_values))
            raise ConfigError(f"bad solver options: {exc}", seen[key], key) from None
    return config


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
