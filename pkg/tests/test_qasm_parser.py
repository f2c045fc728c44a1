"""Parser structure, error positions, and expression evaluation."""
import math

import pytest

from svsim.errors import (
    IncludeCycle,
    IncludeNotFound,
    NonFiniteResult,
    ParseError,
    SemanticError,
    UnboundParameter,
)
from svsim.qasm import ast, eval_param, parse_source, resolve_includes
from svsim.qasm.ast import to_source


BELL = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""


def test_bell_program_shape():
    tree = parse_source(BELL)
    resolved = resolve_includes(tree)
    decls = [i for i in resolved.items
             if isinstance(i, (ast.QregDecl, ast.CregDecl))]
    stmts = [i for i in resolved.items
             if isinstance(i, (ast.GateCall, ast.Measure))]
    assert len(decls) == 2
    assert len(stmts) == 3
    # whole-register measure kept as one statement
    m = stmts[-1]
    assert isinstance(m, ast.Measure)
    assert m.source.index is None and m.dest.index is None


def test_gate_def_with_param():
    tree = parse_source(
        "OPENQASM 2.0;\ngate cphase(t) a,b { cu1(t) a,b; }\n")
    (gd,) = tree.items
    assert isinstance(gd, ast.GateDef)
    assert gd.params == ("t",)
    assert gd.qargs == ("a", "b")
    assert len(gd.body) == 1
    call = gd.body[0]
    assert isinstance(call, ast.GateCall) and call.name == "cu1"


def test_missing_semicolon_positioned():
    with pytest.raises(ParseError) as err:
        parse_source("OPENQASM 2.0;\nqreg q[1];\nh q[0]")
    assert err.value.expected == ";"
    assert err.value.line == 3


def test_missing_version_header():
    with pytest.raises(ParseError):
        parse_source("qreg q[1];")


def test_duplicate_version_header():
    with pytest.raises(ParseError) as err:
        parse_source("OPENQASM 2.0;\nOPENQASM 2.0;\n")
    assert err.value.line == 2


def test_version_must_be_2_0():
    with pytest.raises(ParseError):
        parse_source("OPENQASM 3.0;\n")


def test_duplicate_register_name_across_namespaces():
    with pytest.raises(SemanticError) as err:
        parse_source("OPENQASM 2.0;\nqreg r[2];\ncreg r[2];\n")
    assert err.value.line == 3


def test_operand_index_out_of_range():
    with pytest.raises(SemanticError) as err:
        parse_source("OPENQASM 2.0;\nqreg q[2];\nreset q[5];\n")
    assert err.value.line == 3


def test_unknown_register():
    with pytest.raises(SemanticError):
        parse_source("OPENQASM 2.0;\nqreg q[2];\nreset r[0];\n")


def test_measure_register_kind_checked():
    with pytest.raises(SemanticError):
        parse_source("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\n"
                     "measure c[0] -> c[0];\n")


def test_gate_body_scope():
    with pytest.raises(SemanticError) as err:
        parse_source("OPENQASM 2.0;\ngate g a { U(0,0,0) b; }\n")
    assert err.value.line == 2


def test_gate_body_param_scope():
    with pytest.raises(SemanticError):
        parse_source("OPENQASM 2.0;\ngate g(t) a { U(t, u, 0) a; }\n")


def test_gate_body_forbids_indexing():
    with pytest.raises(ParseError):
        parse_source("OPENQASM 2.0;\ngate g a { U(0,0,0) a[0]; }\n")


def test_if_form():
    tree = parse_source(
        "OPENQASM 2.0;\nqreg q[1];\ncreg c[2];\nif (c == 3) reset q[0];\n")
    stmt = tree.items[-1]
    assert isinstance(stmt, ast.If)
    assert stmt.creg == "c" and stmt.value == 3
    assert isinstance(stmt.body, ast.Reset)


def test_if_requires_equality():
    with pytest.raises(ParseError) as err:
        parse_source("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\n"
                     "if (c 1) reset q[0];\n")
    assert err.value.expected == "=="


def test_if_around_barrier_rejected():
    with pytest.raises(ParseError):
        parse_source("OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\n"
                     "if (c == 1) barrier q;\n")


def test_opaque_declaration():
    tree = parse_source("OPENQASM 2.0;\nopaque magic(a,b) x,y;\n")
    (od,) = tree.items
    assert isinstance(od, ast.OpaqueDecl)
    assert od.params == ("a", "b") and od.qargs == ("x", "y")


def test_empty_parens_call():
    tree = parse_source("OPENQASM 2.0;\nqreg q[1];\nfoo() q[0];\n")
    call = tree.items[-1]
    assert isinstance(call, ast.GateCall) and call.params == ()


def test_empty_gate_body():
    tree = parse_source("OPENQASM 2.0;\ngate nop a { }\n")
    assert tree.items[0].body == ()


# --- includes ---------------------------------------------------------------

def test_stdlib_include_provides_gates():
    resolved = resolve_includes(parse_source(BELL))
    names = {i.name for i in resolved.items if isinstance(i, ast.GateDef)}
    assert {"u3", "u2", "u1", "cx", "id", "x", "y", "z", "h", "s", "sdg",
            "t", "tdg", "rx", "ry", "rz", "cz", "cy", "ch", "ccx", "crz",
            "cu1", "cu3"} <= names


def test_include_not_found(tmp_path):
    tree = parse_source('OPENQASM 2.0;\ninclude "missing.inc";\n')
    with pytest.raises(IncludeNotFound):
        resolve_includes(tree, tmp_path)


def test_include_relative_and_nested(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "a.inc").write_text('include "b.inc";\ngate gg q { }\n')
    (tmp_path / "sub" / "b.inc").write_text("gate hh q { }\n")
    tree = parse_source('OPENQASM 2.0;\ninclude "sub/a.inc";\n')
    resolved = resolve_includes(tree, tmp_path)
    names = [i.name for i in resolved.items if isinstance(i, ast.GateDef)]
    assert names == ["hh", "gg"]


def test_include_cycle(tmp_path):
    (tmp_path / "a.inc").write_text('include "b.inc";\n')
    (tmp_path / "b.inc").write_text('include "a.inc";\n')
    tree = parse_source('OPENQASM 2.0;\ninclude "a.inc";\n')
    with pytest.raises(IncludeCycle):
        resolve_includes(tree, tmp_path)


# --- expressions ------------------------------------------------------------

def expr_of(text, params=frozenset()):
    tree = parse_source(f"OPENQASM 2.0;\ngate g({','.join(params) or 'unused'}) a "
                        f"{{ U({text}, 0, 0) a; }}\n")
    return tree.items[0].body[0].theta


def test_eval_pi_over_two():
    assert eval_param(expr_of("pi/2")) == 1.5707963267948966


def test_eval_with_binding():
    e = expr_of("-pi/4 + t", params={"t"})
    assert eval_param(e, {"t": math.pi / 4}) == 0.0


def test_power_right_associative():
    # frozen from an independent evaluator: 2^(3^2) = 512
    assert eval_param(expr_of("2^3^2")) == 512.0


def test_power_binds_tighter_than_unary_minus():
    assert eval_param(expr_of("-2^2")) == -4.0


def test_functions():
    assert abs(eval_param(expr_of("sin(pi/2)")) - 1.0) < 1e-15
    assert abs(eval_param(expr_of("ln(exp(1.5))")) - 1.5) < 1e-12
    assert eval_param(expr_of("sqrt(9)")) == 3.0
    assert abs(eval_param(expr_of("tan(pi/4)")) - 1.0) < 1e-12
    assert abs(eval_param(expr_of("cos(0)")) - 1.0) == 0.0


def test_precedence_mul_over_add():
    assert eval_param(expr_of("1 + 2 * 3")) == 7.0
    assert eval_param(expr_of("(1 + 2) * 3")) == 9.0


def test_unbound_parameter():
    with pytest.raises(UnboundParameter):
        eval_param(expr_of("t", params={"t"}), {})


def test_division_by_zero():
    with pytest.raises(NonFiniteResult):
        eval_param(expr_of("1/0"))


def test_ln_domain():
    with pytest.raises(NonFiniteResult):
        eval_param(expr_of("ln(0 - 1)"))


# --- printer round trip -------------------------------------------------------

def test_round_trip_bell():
    tree = parse_source(BELL)
    assert parse_source(to_source(tree)) == tree


def test_round_trip_expressions():
    src = ("OPENQASM 2.0;\n"
           "gate g(a,b) x { U(-a^2 + sin(b)/4, 2.5e-3, pi) x; }\n")
    tree = parse_source(src)
    assert parse_source(to_source(tree)) == tree
