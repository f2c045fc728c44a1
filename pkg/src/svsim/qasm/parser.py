"""Recursive-descent parser for OpenQASM 2.0.

Grammar follows the language reference: a mandatory version header, then
declarations, gate definitions, opaque declarations, includes and quantum
statements. Gate bodies may only apply U, CX, previously defined gates and
barriers to their formal arguments; that scoping is checked here, while
gate-name resolution and arity checks happen at compile time, after
includes are spliced.

The parser also enforces what it can see locally: unique register names
across both namespaces, in-range operand indices for declared registers,
and exactly one version header before anything else.
"""
from __future__ import annotations

from ..errors import ParseError, SemanticError
from . import ast
from .tokens import Token, tokenize


def parse(tokens: list[Token], *, expect_header: bool = True) -> ast.Program:
    return _Parser(tokens).program(expect_header=expect_header)


def parse_source(source: str, *, expect_header: bool = True) -> ast.Program:
    return parse(tokenize(source), expect_header=expect_header)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.qregs: dict[str, int] = {}
        self.cregs: dict[str, int] = {}

    # -- token plumbing --

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError(
                "unexpected end of input",
                line=last.line if last else 1, col=last.col if last else 1,
                expected="more input", found="end of input")
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        want = text if text is not None else kind
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError(
                f"expected {want!r}, found end of input",
                line=last.line if last else 1, col=last.col if last else 1,
                expected=want, found="end of input")
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(
                f"expected {want!r}, found {tok.text!r}",
                line=tok.line, col=tok.col, expected=want, found=tok.text)
        return self.next()

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return (tok is not None and tok.kind == kind
                and (text is None or tok.text == text))

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.next()
        return None

    # -- grammar --

    def program(self, expect_header: bool = True) -> ast.Program:
        if expect_header:
            self.expect("keyword", "OPENQASM")
            ver = self.expect("real")
            if ver.text != "2.0":
                raise ParseError(f"unsupported version {ver.text!r}",
                                 line=ver.line, col=ver.col,
                                 expected="2.0", found=ver.text)
            self.expect("symbol", ";")
        items: list[ast.Item] = []
        while self.peek() is not None:
            if self.at("keyword", "OPENQASM"):
                tok = self.peek()
                raise ParseError("duplicate version header",
                                 line=tok.line, col=tok.col,
                                 expected="statement", found="OPENQASM")
            items.append(self.item())
        return ast.Program(version=(2, 0), items=tuple(items))

    def item(self) -> ast.Item:
        tok = self.peek()
        if tok.kind == "keyword":
            if tok.text == "include":
                return self.include()
            if tok.text in ("qreg", "creg"):
                return self.reg_decl()
            if tok.text == "gate":
                return self.gate_def()
            if tok.text == "opaque":
                return self.opaque_decl()
        return self.statement()

    def include(self) -> ast.Include:
        kw = self.expect("keyword", "include")
        path = self.expect("string")
        self.expect("symbol", ";")
        return ast.Include(path.text, line=kw.line, col=kw.col)

    def reg_decl(self) -> ast.Item:
        kw = self.next()
        name = self.expect("identifier")
        self.expect("symbol", "[")
        size_tok = self.expect("integer")
        self.expect("symbol", "]")
        self.expect("symbol", ";")
        size = int(size_tok.text)
        if size < 1:
            raise SemanticError(f"register {name.text!r} must have size >= 1",
                                line=size_tok.line, col=size_tok.col)
        if name.text in self.qregs or name.text in self.cregs:
            raise SemanticError(f"duplicate register name {name.text!r}",
                                line=name.line, col=name.col)
        if kw.text == "qreg":
            self.qregs[name.text] = size
            return ast.QregDecl(name.text, size, line=kw.line, col=kw.col)
        self.cregs[name.text] = size
        return ast.CregDecl(name.text, size, line=kw.line, col=kw.col)

    def gate_def(self) -> ast.GateDef:
        kw = self.expect("keyword", "gate")
        name = self.expect("identifier")
        params: tuple[str, ...] = ()
        if self.accept("symbol", "("):
            params = self.id_list() if not self.at("symbol", ")") else ()
            self.expect("symbol", ")")
        qargs = self.id_list()
        if len(set(params)) != len(params) or len(set(qargs)) != len(qargs):
            raise SemanticError(
                f"duplicate formal argument in gate {name.text!r}",
                line=name.line, col=name.col)
        self.expect("symbol", "{")
        body: list[ast.Statement] = []
        while not self.at("symbol", "}"):
            body.append(self.gate_body_statement(set(params), set(qargs), name.text))
        self.expect("symbol", "}")
        return ast.GateDef(name.text, params, qargs, tuple(body),
                           line=kw.line, col=kw.col)

    def id_list(self) -> tuple[str, ...]:
        names = [self.expect("identifier").text]
        while self.accept("symbol", ","):
            names.append(self.expect("identifier").text)
        return tuple(names)

    def gate_body_statement(self, params: set[str], qargs: set[str],
                            gate_name: str) -> ast.Statement:
        tok = self.peek()
        if tok is None:
            raise ParseError("unterminated gate body", line=1, col=1,
                             expected="}", found="end of input")
        if tok.kind == "keyword" and tok.text == "barrier":
            self.next()
            ops = [self.body_operand(qargs, gate_name)]
            while self.accept("symbol", ","):
                ops.append(self.body_operand(qargs, gate_name))
            self.expect("symbol", ";")
            return ast.Barrier(tuple(ops), line=tok.line, col=tok.col)
        if tok.kind == "keyword" and tok.text == "U":
            self.next()
            self.expect("symbol", "(")
            theta = self.expr(params)
            self.expect("symbol", ",")
            phi = self.expr(params)
            self.expect("symbol", ",")
            lam = self.expr(params)
            self.expect("symbol", ")")
            op = self.body_operand(qargs, gate_name)
            self.expect("symbol", ";")
            return ast.UCall(theta, phi, lam, op, line=tok.line, col=tok.col)
        if tok.kind == "keyword" and tok.text == "CX":
            self.next()
            a = self.body_operand(qargs, gate_name)
            self.expect("symbol", ",")
            b = self.body_operand(qargs, gate_name)
            self.expect("symbol", ";")
            return ast.CXCall(a, b, line=tok.line, col=tok.col)
        if tok.kind == "identifier":
            name = self.next()
            call_params: tuple[ast.Expr, ...] = ()
            if self.accept("symbol", "("):
                if not self.at("symbol", ")"):
                    call_params = self.expr_list(params)
                self.expect("symbol", ")")
            ops = [self.body_operand(qargs, gate_name)]
            while self.accept("symbol", ","):
                ops.append(self.body_operand(qargs, gate_name))
            self.expect("symbol", ";")
            return ast.GateCall(name.text, call_params, tuple(ops),
                                line=name.line, col=name.col)
        raise ParseError(f"expected gate operation, found {tok.text!r}",
                         line=tok.line, col=tok.col,
                         expected="gate operation", found=tok.text)

    def body_operand(self, qargs: set[str], gate_name: str) -> ast.Operand:
        tok = self.expect("identifier")
        if tok.text not in qargs:
            raise SemanticError(
                f"unknown identifier {tok.text!r} in body of gate {gate_name!r}",
                line=tok.line, col=tok.col)
        if self.at("symbol", "["):
            raise ParseError("gate bodies may not index arguments",
                             line=tok.line, col=tok.col,
                             expected=";", found="[")
        return ast.Operand(tok.text, None, line=tok.line, col=tok.col)

    def opaque_decl(self) -> ast.OpaqueDecl:
        kw = self.expect("keyword", "opaque")
        name = self.expect("identifier")
        params: tuple[str, ...] = ()
        if self.accept("symbol", "("):
            params = self.id_list() if not self.at("symbol", ")") else ()
            self.expect("symbol", ")")
        qargs = self.id_list()
        self.expect("symbol", ";")
        return ast.OpaqueDecl(name.text, params, qargs,
                              line=kw.line, col=kw.col)

    # -- quantum statements --

    def statement(self) -> ast.Statement:
        tok = self.peek()
        if tok.kind == "keyword" and tok.text == "if":
            return self.if_statement()
        return self.qop_or_barrier()

    def if_statement(self) -> ast.If:
        kw = self.expect("keyword", "if")
        self.expect("symbol", "(")
        creg = self.expect("identifier")
        if creg.text not in self.cregs:
            raise SemanticError(f"unknown classical register {creg.text!r}",
                                line=creg.line, col=creg.col)
        self.expect("symbol", "==")
        val = self.expect("integer")
        self.expect("symbol", ")")
        body = self.qop_or_barrier(allow_barrier=False)
        return ast.If(creg.text, int(val.text), body, line=kw.line, col=kw.col)

    def qop_or_barrier(self, allow_barrier: bool = True) -> ast.Statement:
        tok = self.peek()
        if tok.kind == "keyword":
            if tok.text == "measure":
                self.next()
                src = self.operand()
                self.expect("symbol", "->")
                dst = self.operand(classical=True)
                self.expect("symbol", ";")
                return ast.Measure(src, dst, line=tok.line, col=tok.col)
            if tok.text == "reset":
                self.next()
                op = self.operand()
                self.expect("symbol", ";")
                return ast.Reset(op, line=tok.line, col=tok.col)
            if tok.text == "barrier" and allow_barrier:
                self.next()
                ops = [self.operand()]
                while self.accept("symbol", ","):
                    ops.append(self.operand())
                self.expect("symbol", ";")
                return ast.Barrier(tuple(ops), line=tok.line, col=tok.col)
            if tok.text == "U":
                self.next()
                self.expect("symbol", "(")
                theta = self.expr(set())
                self.expect("symbol", ",")
                phi = self.expr(set())
                self.expect("symbol", ",")
                lam = self.expr(set())
                self.expect("symbol", ")")
                op = self.operand()
                self.expect("symbol", ";")
                return ast.UCall(theta, phi, lam, op, line=tok.line, col=tok.col)
            if tok.text == "CX":
                self.next()
                a = self.operand()
                self.expect("symbol", ",")
                b = self.operand()
                self.expect("symbol", ";")
                return ast.CXCall(a, b, line=tok.line, col=tok.col)
            raise ParseError(f"unexpected keyword {tok.text!r}",
                             line=tok.line, col=tok.col,
                             expected="statement", found=tok.text)
        if tok.kind == "identifier":
            name = self.next()
            params: tuple[ast.Expr, ...] = ()
            if self.accept("symbol", "("):
                if not self.at("symbol", ")"):
                    params = self.expr_list(set())
                self.expect("symbol", ")")
            ops = [self.operand()]
            while self.accept("symbol", ","):
                ops.append(self.operand())
            self.expect("symbol", ";")
            return ast.GateCall(name.text, params, tuple(ops),
                                line=name.line, col=name.col)
        raise ParseError(f"expected statement, found {tok.text!r}",
                         line=tok.line, col=tok.col,
                         expected="statement", found=tok.text)

    def operand(self, classical: bool = False) -> ast.Operand:
        tok = self.expect("identifier")
        regs = self.cregs if classical else self.qregs
        other = self.qregs if classical else self.cregs
        if tok.text not in regs:
            kindname = "classical" if classical else "quantum"
            hint = " (wrong register kind)" if tok.text in other else ""
            raise SemanticError(
                f"unknown {kindname} register {tok.text!r}{hint}",
                line=tok.line, col=tok.col)
        index = None
        if self.accept("symbol", "["):
            idx = self.expect("integer")
            self.expect("symbol", "]")
            index = int(idx.text)
            if index >= regs[tok.text]:
                raise SemanticError(
                    f"index {index} out of range for register "
                    f"{tok.text!r} of size {regs[tok.text]}",
                    line=idx.line, col=idx.col)
        return ast.Operand(tok.text, index, line=tok.line, col=tok.col)

    # -- expressions --

    def expr_list(self, params: set[str]) -> tuple[ast.Expr, ...]:
        exprs = [self.expr(params)]
        while self.accept("symbol", ","):
            exprs.append(self.expr(params))
        return tuple(exprs)

    def expr(self, params: set[str]) -> ast.Expr:
        node = self.term(params)
        while self.at("symbol", "+") or self.at("symbol", "-"):
            op = self.next()
            right = self.term(params)
            node = ast.BinOp(op.text, node, right, line=op.line, col=op.col)
        return node

    def term(self, params: set[str]) -> ast.Expr:
        node = self.unary(params)
        while self.at("symbol", "*") or self.at("symbol", "/"):
            op = self.next()
            right = self.unary(params)
            node = ast.BinOp(op.text, node, right, line=op.line, col=op.col)
        return node

    def unary(self, params: set[str]) -> ast.Expr:
        if self.at("symbol", "-"):
            op = self.next()
            return ast.Neg(self.unary(params), line=op.line, col=op.col)
        return self.power(params)

    def power(self, params: set[str]) -> ast.Expr:
        base = self.atom(params)
        if self.at("symbol", "^"):
            op = self.next()
            # right-associative; allow a sign on the exponent
            right = self.unary(params)
            return ast.BinOp("^", base, right, line=op.line, col=op.col)
        return base

    def atom(self, params: set[str]) -> ast.Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected expression, found end of input",
                             line=1, col=1,
                             expected="expression", found="end of input")
        if tok.kind == "integer":
            self.next()
            return ast.IntNum(int(tok.text), line=tok.line, col=tok.col)
        if tok.kind == "real":
            self.next()
            return ast.RealNum(float(tok.text), line=tok.line, col=tok.col)
        if tok.kind == "keyword" and tok.text == "pi":
            self.next()
            return ast.Pi(line=tok.line, col=tok.col)
        if tok.kind == "identifier" and tok.text in ast.FUNCTIONS:
            self.next()
            self.expect("symbol", "(")
            inner = self.expr(params)
            self.expect("symbol", ")")
            return ast.Func(tok.text, inner, line=tok.line, col=tok.col)
        if tok.kind == "identifier":
            self.next()
            if tok.text not in params:
                raise SemanticError(f"unknown parameter {tok.text!r}",
                                    line=tok.line, col=tok.col)
            return ast.Param(tok.text, line=tok.line, col=tok.col)
        if self.accept("symbol", "("):
            inner = self.expr(params)
            self.expect("symbol", ")")
            return inner
        raise ParseError(f"expected expression, found {tok.text!r}",
                         line=tok.line, col=tok.col,
                         expected="expression", found=tok.text)
