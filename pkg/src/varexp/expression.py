"""Tiny arithmetic expression language for exponent, datum and source fields.

Accepted grammar: numeric literals, the variables ``x`` and ``y``, the
constant ``pi``, binary ``+ - * / ^``, unary minus, parentheses and the
functions ``sin``, ``cos``, ``exp``, ``abs``.  ``^`` is exponentiation.

Expressions are parsed with :mod:`ast` and then checked node by node, so
nothing outside the grammar is ever evaluated.
"""

import ast

import numpy as np

__all__ = ["ExpressionError", "Expression", "parse_expression"]

_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "abs": np.abs}
_CONSTANTS = {"pi": np.pi}
_VARIABLES = ("x", "y")
_BINOPS = {
    ast.Add: np.add,
    ast.Sub: np.subtract,
    ast.Mult: np.multiply,
    ast.Div: np.divide,
    ast.Pow: np.power,
}


class ExpressionError(ValueError):
    """Raised when an expression string falls outside the grammar."""


def _check(node, text):
    if isinstance(node, ast.Expression):
        _check(node.body, text)
    elif isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ExpressionError(f"unsupported literal {node.value!r} in {text!r}")
    elif isinstance(node, ast.Name):
        if node.id not in _VARIABLES and node.id not in _CONSTANTS:
            raise ExpressionError(f"unknown name {node.id!r} in {text!r}")
    elif isinstance(node, ast.BinOp):
        if type(node.op) not in _BINOPS:
            raise ExpressionError(f"unsupported operator in {text!r}")
        _check(node.left, text)
        _check(node.right, text)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, (ast.USub, ast.UAdd)):
            raise ExpressionError(f"unsupported unary operator in {text!r}")
        _check(node.operand, text)
    elif isinstance(node, ast.Call):
        if (not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS
                or len(node.args) != 1 or node.keywords):
            raise ExpressionError(f"unsupported function call in {text!r}")
        _check(node.args[0], text)
    else:
        raise ExpressionError(f"unsupported syntax {type(node).__name__} in {text!r}")


def _evaluate(node, env):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, env)
    if isinstance(node, ast.Constant):
        return float(node.value)
    if isinstance(node, ast.Name):
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        try:
            return env[node.id]
        except KeyError:
            raise ExpressionError(f"variable {node.id!r} is not defined here") from None
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_evaluate(node.left, env), _evaluate(node.right, env))
    if isinstance(node, ast.UnaryOp):
        value = _evaluate(node.operand, env)
        return -value if isinstance(node.op, ast.USub) else value
    # only Call is left after _check
    return _FUNCTIONS[node.func.id](_evaluate(node.args[0], env))


class Expression:
    """A parsed expression that can be evaluated on coordinate arrays."""

    def __init__(self, text):
        self.text = text
        try:
            tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
        except SyntaxError as exc:
            raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
        _check(tree, text)
        self._tree = tree
        self.variables = sorted(
            {n.id for n in ast.walk(tree) if isinstance(n, ast.Name) and n.id in _VARIABLES})

    def __call__(self, points):
        """Evaluate at ``points`` of shape (m, d); returns shape (m,)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        env = {name: points[:, k] for k, name in enumerate(_VARIABLES[: points.shape[1]])}
        with np.errstate(all="ignore"):
            values = _evaluate(self._tree, env)
        return np.broadcast_to(np.asarray(values, dtype=float), (points.shape[0],)).copy()

    def __repr__(self):
        return f"Expression({self.text!r})"


def parse_expression(text):
    return Expression(text)
