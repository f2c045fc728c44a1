"""Parameter expression evaluation over real numbers."""
from __future__ import annotations

import math

from ..errors import NonFiniteResult, UnboundParameter
from . import ast

_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}


def eval_param(expr: ast.Expr, bindings: dict[str, float] | None = None) -> float:
    """Evaluate an expression tree to a finite real (radians where angular)."""
    bindings = bindings or {}
    value = _eval(expr, bindings)
    if not math.isfinite(value):
        raise NonFiniteResult(f"expression evaluates to {value!r}",
                              line=getattr(expr, "line", None) or None)
    return value


def _eval(e: ast.Expr, b: dict[str, float]) -> float:
    if isinstance(e, ast.IntNum):
        return float(e.value)
    if isinstance(e, ast.RealNum):
        return e.value
    if isinstance(e, ast.Pi):
        return math.pi
    if isinstance(e, ast.Param):
        if e.name not in b:
            raise UnboundParameter(f"parameter {e.name!r} is not bound",
                                   line=e.line or None, col=e.col or None)
        return b[e.name]
    if isinstance(e, ast.Neg):
        return -_eval(e.operand, b)
    if isinstance(e, ast.Func):
        try:
            return _FUNCS[e.name](_eval(e.operand, b))
        except ValueError:
            raise NonFiniteResult(
                f"{e.name} applied outside its domain",
                line=e.line or None, col=e.col or None) from None
    if isinstance(e, ast.BinOp):
        lhs = _eval(e.left, b)
        rhs = _eval(e.right, b)
        if e.op == "+":
            return lhs + rhs
        if e.op == "-":
            return lhs - rhs
        if e.op == "*":
            return lhs * rhs
        if e.op == "/":
            if rhs == 0.0:
                raise NonFiniteResult("division by zero",
                                      line=e.line or None, col=e.col or None)
            return lhs / rhs
        if e.op == "^":
            try:
                return float(lhs ** rhs)
            except (OverflowError, ZeroDivisionError, ValueError):
                raise NonFiniteResult(
                    "exponentiation out of range",
                    line=e.line or None, col=e.col or None) from None
    raise TypeError(f"not an expression node: {e!r}")
