"""Corpus conformance: every valid file parses, compiles, and survives a
parse -> print -> parse round trip; every near-miss fails with an error
pointing at the bad line."""
from pathlib import Path

import pytest

from svsim.errors import EmulatorError
from svsim.qasm import parse_source, resolve_includes
from svsim.qasm.ast import to_source
from svsim.vm import compile_program

CORPUS = Path(__file__).parent / "corpus"
VALID = sorted((CORPUS / "valid").glob("*.qasm"))
INVALID = sorted((CORPUS / "invalid").glob("*.qasm"))

# file stem -> (expected error line, expected error class name)
EXPECTED_ERRORS = {
    "e01_missing_semicolon": (3, "ParseError"),
    "e02_no_header": (1, "ParseError"),
    "e03_bad_version": (1, "ParseError"),
    "e04_unknown_char": (2, "LexError"),
    "e05_uppercase_ident": (3, "LexError"),
    "e06_unterminated_string": (2, "LexError"),
    "e07_dup_register": (3, "SemanticError"),
    "e08_reg_size_zero": (2, "SemanticError"),
    "e09_index_out_of_range": (3, "SemanticError"),
    "e10_unknown_register": (3, "SemanticError"),
    "e11_dup_version": (3, "ParseError"),
    "e12_if_not_equality": (4, "ParseError"),
    "e13_gate_body_scope": (2, "SemanticError"),
    "e14_gate_body_index": (2, "ParseError"),
    "e15_measure_wrong_arrow": (4, "LexError"),
    "e16_lone_semicolon": (3, "ParseError"),
    "e17_unclosed_paren": (3, "ParseError"),
    "e18_dup_gate_formals": (2, "SemanticError"),
    "e19_unbound_toplevel_param": (3, "SemanticError"),
    "e20_barrier_in_if": (4, "ParseError"),
    "e21_opaque_no_semicolon": (2, "ParseError"),
    "e22_cx_missing_comma": (3, "ParseError"),
    "e23_call_number_operand": (3, "ParseError"),
}


def test_corpus_sizes():
    assert len(VALID) >= 25
    assert len(INVALID) >= 15
    assert {p.stem for p in INVALID} == set(EXPECTED_ERRORS)


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_valid_parses_and_compiles(path):
    tree = parse_source(path.read_text())
    compile_program(resolve_includes(tree, path.parent))


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_round_trip_idempotent(path):
    tree = parse_source(path.read_text())
    printed = to_source(tree)
    again = parse_source(printed)
    assert again == tree
    # printing is a fixed point after one pass
    assert to_source(again) == printed


@pytest.mark.parametrize("path", INVALID, ids=lambda p: p.stem)
def test_invalid_gives_positioned_error(path):
    want_line, want_type = EXPECTED_ERRORS[path.stem]
    with pytest.raises(EmulatorError) as err:
        parse_source(path.read_text())
    assert type(err.value).__name__ == want_type
    assert err.value.line == want_line
    assert err.value.col is not None


def test_statement_form_coverage():
    """Every statement form appears somewhere in the accepted corpus."""
    text = "\n".join(p.read_text() for p in VALID)
    for needle in ("U(", "CX ", "measure ", "reset ", "barrier ",
                   "if (", "opaque ", "gate ", "include "):
        assert needle in text, needle
