"""AST node types for an OpenQASM 2.0 translation unit, plus a printer.

Positions ride along on every node for diagnostics but are excluded from
equality, so a parse -> print -> parse round trip compares structurally
equal. Parameter expressions keep their tree shape; parentheses in the
source are not represented.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


def _pos_field():
    return field(default=0, compare=False, repr=False)


# --- parameter expressions -------------------------------------------------

@dataclass(frozen=True)
class IntNum:
    value: int
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class RealNum:
    value: float
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Pi:
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Param:
    name: str
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    left: "Expr"
    right: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Func:
    name: str  # sin cos tan exp ln sqrt
    operand: "Expr"
    line: int = _pos_field()
    col: int = _pos_field()


Expr = Union[IntNum, RealNum, Pi, Param, Neg, BinOp, Func]

FUNCTIONS = frozenset({"sin", "cos", "tan", "exp", "ln", "sqrt"})


# --- operands ---------------------------------------------------------------

@dataclass(frozen=True)
class Operand:
    """Whole register (index None) or one element reg[k]."""
    name: str
    index: int | None = None
    line: int = _pos_field()
    col: int = _pos_field()


# --- statements --------------------------------------------------------------

@dataclass(frozen=True)
class GateCall:
    name: str
    params: tuple[Expr, ...]
    operands: tuple[Operand, ...]
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class UCall:
    theta: Expr
    phi: Expr
    lam: Expr
    operand: Operand
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class CXCall:
    control: Operand
    target: Operand
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Measure:
    source: Operand
    dest: Operand
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Reset:
    operand: Operand
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Barrier:
    operands: tuple[Operand, ...]
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class If:
    creg: str
    value: int
    body: "Statement"
    line: int = _pos_field()
    col: int = _pos_field()


Statement = Union[GateCall, UCall, CXCall, Measure, Reset, Barrier, If]


# --- declarations -------------------------------------------------------------

@dataclass(frozen=True)
class QregDecl:
    name: str
    size: int
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class CregDecl:
    name: str
    size: int
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class GateDef:
    name: str
    params: tuple[str, ...]
    qargs: tuple[str, ...]
    body: tuple[Statement, ...]  # GateCall | UCall | CXCall | Barrier only
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class OpaqueDecl:
    name: str
    params: tuple[str, ...]
    qargs: tuple[str, ...]
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Include:
    path: str
    line: int = _pos_field()
    col: int = _pos_field()


Item = Union[QregDecl, CregDecl, GateDef, OpaqueDecl, Include, Statement]


@dataclass(frozen=True)
class Program:
    version: tuple[int, int]
    items: tuple[Item, ...]


# --- printer -------------------------------------------------------------------

def expr_to_source(e: Expr) -> str:
    if isinstance(e, IntNum):
        return str(e.value)
    if isinstance(e, RealNum):
        return repr(e.value)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Neg):
        return f"(-{expr_to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({expr_to_source(e.left)} {e.op} {expr_to_source(e.right)})"
    if isinstance(e, Func):
        return f"{e.name}({expr_to_source(e.operand)})"
    raise TypeError(f"not an expression node: {e!r}")


def _operand(o: Operand) -> str:
    return o.name if o.index is None else f"{o.name}[{o.index}]"


def _stmt(s: Statement) -> str:
    if isinstance(s, GateCall):
        params = f"({', '.join(expr_to_source(p) for p in s.params)})" if s.params else ""
        return f"{s.name}{params} {', '.join(_operand(o) for o in s.operands)};"
    if isinstance(s, UCall):
        args = ", ".join(expr_to_source(e) for e in (s.theta, s.phi, s.lam))
        return f"U({args}) {_operand(s.operand)};"
    if isinstance(s, CXCall):
        return f"CX {_operand(s.control)}, {_operand(s.target)};"
    if isinstance(s, Measure):
        return f"measure {_operand(s.source)} -> {_operand(s.dest)};"
    if isinstance(s, Reset):
        return f"reset {_operand(s.operand)};"
    if isinstance(s, Barrier):
        return f"barrier {', '.join(_operand(o) for o in s.operands)};"
    if isinstance(s, If):
        return f"if ({s.creg} == {s.value}) {_stmt(s.body)}"
    raise TypeError(f"not a statement node: {s!r}")


def to_source(program: Program) -> str:
    """Render a program back to OpenQASM 2.0 text."""
    out = [f"OPENQASM {program.version[0]}.{program.version[1]};"]
    for item in program.items:
        if isinstance(item, Include):
            out.append(f'include "{item.path}";')
        elif isinstance(item, QregDecl):
            out.append(f"qreg {item.name}[{item.size}];")
        elif isinstance(item, CregDecl):
            out.append(f"creg {item.name}[{item.size}];")
        elif isinstance(item, OpaqueDecl):
            params = f"({', '.join(item.params)})" if item.params else ""
            out.append(f"opaque {item.name}{params} {', '.join(item.qargs)};")
        elif isinstance(item, GateDef):
            params = f"({', '.join(item.params)})" if item.params else ""
            head = f"gate {item.name}{params} {', '.join(item.qargs)}"
            if item.body:
                body = "\n".join("  " + _stmt(s) for s in item.body)
                out.append(head + " {\n" + body + "\n}")
            else:
                out.append(head + " { }")
        else:
            out.append(_stmt(item))
    return "\n".join(out) + "\n"
