"""Compiler and executor: OpenQASM AST down to flat kernel instructions.

Lowering rules:

* Whole-register operands broadcast elementwise; every register operand in
  one statement must have the same length, fixed elements repeat.
* A gate call on one or two qubits becomes a single native instruction:
  the call's body is inlined recursively to U/CX primitives and composed
  into one 2x2 or 4x4 matrix, evaluated at its actual parameter values.
  Calls on three or more qubits expand through their bodies instead, so
  every emitted instruction stays one- or two-qubit.
* Every lowered matrix is classified so sparse kinds (diagonal,
  controlled-phase, permutation) are tagged at compile time.
* ``barrier`` compiles to nothing; calling an ``opaque`` declaration is an
  error, there is nothing to run.

Gate counts therefore match circuit-level accounting: one call on at most
two qubits is one gate, however deep its definition.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import (
    ArityMismatch,
    BroadcastLengthMismatch,
    EmulatorError,
    OpaqueCallUnsupported,
    RegisterOverflow,
    SemanticError,
    StateSizeMismatch,
    UnknownGate,
)
from .kernel import ExecConfig, Gate1, Gate2, Precision, StateVector, classify_gate2, new_state
from .qasm import ast, eval_param, parse_source, resolve_includes
from .rng import RngState


# --- data types -------------------------------------------------------------

@dataclass(frozen=True)
class QubitMap:
    """Contiguous global layout of the declared quantum registers."""
    offsets: tuple[tuple[str, int, int], ...]  # (name, offset, size)
    total: int

    def index(self, name: str, element: int) -> int:
        for reg, off, size in self.offsets:
            if reg == name:
                return off + element
        raise KeyError(name)

    def size(self, name: str) -> int:
        for reg, _, size in self.offsets:
            if reg == name:
                return size
        raise KeyError(name)


class ClassicalStore:
    """Bit array per classical register; bits change only via measures."""

    def __init__(self, sizes: dict[str, int]):
        self._bits: dict[str, list[int]] = {n: [0] * s for n, s in sizes.items()}

    def set_bit(self, name: str, index: int, bit: int) -> None:
        self._bits[name][index] = bit

    def bits(self, name: str) -> list[int]:
        return list(self._bits[name])

    def value(self, name: str) -> int:
        return sum(b << k for k, b in enumerate(self._bits[name]))

    def names(self) -> list[str]:
        return list(self._bits)

    def key_string(self) -> str:
        """All registers concatenated in declaration order, element 0
        leftmost within each register."""
        return "".join("".join(str(b) for b in bits)
                       for bits in self._bits.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassicalStore) and self._bits == other._bits

    def __repr__(self) -> str:
        return f"ClassicalStore({self._bits})"


@dataclass(frozen=True)
class Apply1:
    gate: Gate1
    target: int


@dataclass(frozen=True)
class Apply2:
    gate: Gate2
    q0: int
    q1: int


@dataclass(frozen=True)
class MeasureBit:
    qubit: int
    creg: str
    bit: int


@dataclass(frozen=True)
class ResetQubit:
    qubit: int


@dataclass(frozen=True)
class Conditional:
    creg: str
    value: int
    inner: "KernelInstruction"


KernelInstruction = Union[Apply1, Apply2, MeasureBit, ResetQubit, Conditional]


@dataclass(frozen=True)
class ProgramStats:
    gate_count: int = 0
    measure_count: int = 0
    reset_count: int = 0


@dataclass(frozen=True)
class CompiledProgram:
    instructions: tuple[KernelInstruction, ...]
    qubit_map: QubitMap
    creg_sizes: dict[str, int]
    stats: ProgramStats


# --- primitive matrices -------------------------------------------------------

def u_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return np.array([
        [c, -cmath.exp(1j * lam) * s],
        [cmath.exp(1j * phi) * s, cmath.exp(1j * (lam + phi)) * c],
    ], dtype=np.complex128)


def _cx_matrix(control_bit: int, target_bit: int, n_bits: int) -> np.ndarray:
    dim = 1 << n_bits
    m = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        j = i ^ (1 << target_bit) if (i >> control_bit) & 1 else i
        m[j, i] = 1.0
    return m


CX_LOCAL = _cx_matrix(0, 1, 2)  # control = first operand = low local bit


def _embed_local(m: np.ndarray, bits: tuple[int, ...], n_bits: int) -> np.ndarray:
    """Lift a small matrix onto chosen bits of a 1- or 2-bit local space."""
    if len(bits) == n_bits and bits == tuple(range(n_bits)):
        return m
    dim = 1 << n_bits
    full = np.zeros((dim, dim), dtype=np.complex128)
    clear = 0
    for b in bits:
        clear |= 1 << b
    for i in range(dim):
        loc = 0
        for j, b in enumerate(bits):
            loc |= ((i >> b) & 1) << j
        base = i & ~clear
        for loc_out in range(1 << len(bits)):
            v = m[loc_out, loc]
            if v != 0:
                i_out = base
                for j, b in enumerate(bits):
                    i_out |= ((loc_out >> j) & 1) << b
                full[i_out, i] += v
    return full


# --- compilation ----------------------------------------------------------------

def compile_program(program: ast.Program) -> CompiledProgram:
    """Lower an include-resolved AST to a flat instruction sequence."""
    return _Compiler(program).run()


class _Compiler:
    def __init__(self, program: ast.Program):
        self.program = program
        self.defs: dict[str, tuple[int, ast.GateDef]] = {}
        self.opaques: set[str] = set()
        self.qubit_map: QubitMap | None = None
        self.creg_sizes: dict[str, int] = {}
        self.instructions: list[KernelInstruction] = []
        self.gate_count = 0
        self.measure_count = 0
        self.reset_count = 0

    def run(self) -> CompiledProgram:
        offsets = []
        total = 0
        for item in self.program.items:
            if isinstance(item, ast.QregDecl):
                offsets.append((item.name, total, item.size))
                total += item.size
            elif isinstance(item, ast.CregDecl):
                self.creg_sizes[item.name] = item.size
        self.qubit_map = QubitMap(tuple(offsets), total)

        for item in self.program.items:
            if isinstance(item, ast.Include):
                raise SemanticError(
                    f"unresolved include {item.path!r}: run include "
                    "resolution before compiling",
                    line=item.line, col=item.col)
            if isinstance(item, ast.GateDef):
                self._define(item)
            elif isinstance(item, ast.OpaqueDecl):
                if item.name in self.defs or item.name in self.opaques:
                    raise SemanticError(
                        f"duplicate gate definition {item.name!r}",
                        line=item.line, col=item.col)
                self.opaques.add(item.name)
            elif isinstance(item, (ast.QregDecl, ast.CregDecl)):
                pass
            else:
                for ins in self._statement(item):
                    self._emit(ins)

        return CompiledProgram(
            instructions=tuple(self.instructions),
            qubit_map=self.qubit_map,
            creg_sizes=dict(self.creg_sizes),
            stats=ProgramStats(self.gate_count, self.measure_count,
                               self.reset_count),
        )

    def _define(self, item: ast.GateDef) -> None:
        if item.name in self.defs or item.name in self.opaques:
            raise SemanticError(f"duplicate gate definition {item.name!r}",
                                line=item.line, col=item.col)
        self.defs[item.name] = (len(self.defs), item)

    def _emit(self, ins: KernelInstruction) -> None:
        inner = ins.inner if isinstance(ins, Conditional) else ins
        if isinstance(inner, (Apply1, Apply2)):
            self.gate_count += 1
        elif isinstance(inner, MeasureBit):
            self.measure_count += 1
        elif isinstance(inner, ResetQubit):
            self.reset_count += 1
        self.instructions.append(ins)

    # -- statement lowering --

    def _statement(self, stmt: ast.Statement) -> list[KernelInstruction]:
        if isinstance(stmt, ast.Barrier):
            return []
        if isinstance(stmt, ast.If):
            size = self.creg_sizes.get(stmt.creg)
            if size is None:
                raise SemanticError(f"unknown classical register {stmt.creg!r}",
                                    line=stmt.line, col=stmt.col)
            if stmt.value >= (1 << size):
                raise RegisterOverflow(
                    f"comparison value {stmt.value} needs more than the "
                    f"{size} bits of register {stmt.creg!r}",
                    line=stmt.line, col=stmt.col)
            return [Conditional(stmt.creg, stmt.value, ins)
                    for ins in self._statement(stmt.body)]
        if isinstance(stmt, ast.Measure):
            return self._measure(stmt)
        if isinstance(stmt, ast.Reset):
            return [ResetQubit(q)
                    for (q,) in self._broadcast([stmt.operand], stmt)]
        if isinstance(stmt, ast.UCall):
            theta = eval_param(stmt.theta)
            phi = eval_param(stmt.phi)
            lam = eval_param(stmt.lam)
            gate = Gate1.from_matrix(u_matrix(theta, phi, lam))
            return [Apply1(gate, q)
                    for (q,) in self._broadcast([stmt.operand], stmt)]
        if isinstance(stmt, ast.CXCall):
            gate = classify_gate2(CX_LOCAL)
            return [Apply2(gate, c, t)
                    for c, t in self._broadcast([stmt.control, stmt.target], stmt)]
        if isinstance(stmt, ast.GateCall):
            return self._gate_call(stmt)
        raise TypeError(f"unexpected statement {stmt!r}")

    def _measure(self, stmt: ast.Measure) -> list[KernelInstruction]:
        src, dst = stmt.source, stmt.dest
        if (src.index is None) != (dst.index is None):
            raise BroadcastLengthMismatch(
                "measure needs both sides indexed or both whole registers",
                line=stmt.line, col=stmt.col)
        if src.index is None:
            qsize = self.qubit_map.size(src.name)
            csize = self.creg_sizes[dst.name]
            if qsize != csize:
                raise BroadcastLengthMismatch(
                    f"measure {src.name}[{qsize}] -> {dst.name}[{csize}]: "
                    "register lengths differ", line=stmt.line, col=stmt.col)
            return [MeasureBit(self.qubit_map.index(src.name, k), dst.name, k)
                    for k in range(qsize)]
        return [MeasureBit(self.qubit_map.index(src.name, src.index),
                           dst.name, dst.index)]

    def _broadcast(self, operands: list[ast.Operand],
                   stmt: ast.Statement) -> list[tuple[int, ...]]:
        """Expand whole-register operands elementwise into global qubit
        index tuples."""
        length = 1
        for op in operands:
            if op.index is None:
                size = self.qubit_map.size(op.name)
                if length not in (1, size):
                    raise BroadcastLengthMismatch(
                        f"registers of unequal length in one statement "
                        f"({length} vs {size})", line=stmt.line, col=stmt.col)
                length = size
        rows = []
        for k in range(length):
            rows.append(tuple(
                self.qubit_map.index(op.name, k if op.index is None else op.index)
                for op in operands))
        return rows

    # -- gate call expansion --

    def _lookup(self, name: str, line: int, col: int,
                visible_before: int | None = None) -> ast.GateDef:
        if name in self.opaques:
            raise OpaqueCallUnsupported(
                f"gate {name!r} is opaque, it has no body to run",
                line=line, col=col)
        entry = self.defs.get(name)
        if entry is None or (visible_before is not None
                             and entry[0] >= visible_before):
            raise UnknownGate(f"unknown gate {name!r}", line=line, col=col)
        return entry[1]

    def _gate_call(self, stmt: ast.GateCall) -> list[KernelInstruction]:
        defn = self._lookup(stmt.name, stmt.line, stmt.col)
        if len(stmt.params) != len(defn.params):
            raise ArityMismatch(
                f"gate {stmt.name!r} takes {len(defn.params)} parameters, "
                f"got {len(stmt.params)}", line=stmt.line, col=stmt.col)
        if len(stmt.operands) != len(defn.qargs):
            raise ArityMismatch(
                f"gate {stmt.name!r} takes {len(defn.qargs)} qubit arguments, "
                f"got {len(stmt.operands)}", line=stmt.line, col=stmt.col)
        values = [eval_param(p) for p in stmt.params]
        out: list[KernelInstruction] = []
        for qubits in self._broadcast(list(stmt.operands), stmt):
            out.extend(self._lower_call(defn, values, qubits))
        return out

    def _lower_call(self, defn: ast.GateDef, values: list[float],
                    qubits: tuple[int, ...]) -> list[KernelInstruction]:
        bindings = dict(zip(defn.params, values))
        if len(defn.qargs) == 1:
            m = self._compose(defn, bindings)
            return [Apply1(Gate1.from_matrix(m), qubits[0])]
        if len(defn.qargs) == 2:
            m = self._compose(defn, bindings)
            return [Apply2(classify_gate2(m), qubits[0], qubits[1])]
        # Wider gates expand through their bodies; each inner call lands
        # on at most two distinct qubits or recurses further.
        slot = dict(zip(defn.qargs, qubits))
        def_index = self.defs[defn.name][0]
        out: list[KernelInstruction] = []
        for st in defn.body:
            if isinstance(st, ast.Barrier):
                continue
            if isinstance(st, ast.UCall):
                theta, phi, lam = (eval_param(e, bindings)
                                   for e in (st.theta, st.phi, st.lam))
                out.append(Apply1(Gate1.from_matrix(u_matrix(theta, phi, lam)),
                                  slot[st.operand.name]))
            elif isinstance(st, ast.CXCall):
                out.append(Apply2(classify_gate2(CX_LOCAL),
                                  slot[st.control.name],
                                  slot[st.target.name]))
            elif isinstance(st, ast.GateCall):
                sub = self._lookup(st.name, st.line, st.col,
                                   visible_before=def_index)
                if len(st.params) != len(sub.params) \
                        or len(st.operands) != len(sub.qargs):
                    raise ArityMismatch(
                        f"gate {st.name!r} called with wrong arity inside "
                        f"{defn.name!r}", line=st.line, col=st.col)
                sub_values = [eval_param(p, bindings) for p in st.params]
                sub_qubits = tuple(slot[o.name] for o in st.operands)
                out.extend(self._lower_call(sub, sub_values, sub_qubits))
            else:
                raise SemanticError(
                    f"unsupported operation in body of {defn.name!r}",
                    line=st.line, col=st.col)
        return out

    def _compose(self, defn: ast.GateDef, bindings: dict[str, float]) -> np.ndarray:
        """Inline a 1- or 2-qubit gate body to U/CX and multiply it out."""
        n_bits = len(defn.qargs)
        slot = {q: i for i, q in enumerate(defn.qargs)}
        def_index = self.defs[defn.name][0] if defn.name in self.defs else None
        m = np.eye(1 << n_bits, dtype=np.complex128)
        for st in defn.body:
            if isinstance(st, ast.Barrier):
                continue
            if isinstance(st, ast.UCall):
                theta, phi, lam = (eval_param(e, bindings)
                                   for e in (st.theta, st.phi, st.lam))
                g = _embed_local(u_matrix(theta, phi, lam),
                                 (slot[st.operand.name],), n_bits)
            elif isinstance(st, ast.CXCall):
                g = _cx_matrix(slot[st.control.name],
                               slot[st.target.name], n_bits)
            elif isinstance(st, ast.GateCall):
                sub = self._lookup(st.name, st.line, st.col,
                                   visible_before=def_index)
                if len(st.params) != len(sub.params) \
                        or len(st.operands) != len(sub.qargs):
                    raise ArityMismatch(
                        f"gate {st.name!r} called with wrong arity inside "
                        f"{defn.name!r}", line=st.line, col=st.col)
                sub_bindings = dict(zip(
                    sub.params, (eval_param(p, bindings) for p in st.params)))
                inner = self._compose(sub, sub_bindings)
                g = _embed_local(inner,
                                 tuple(slot[o.name] for o in st.operands),
                                 n_bits)
            else:
                raise SemanticError(
                    f"unsupported operation in body of {defn.name!r}",
                    line=st.line, col=st.col)
            m = g @ m
        return m


# --- execution ---------------------------------------------------------------

def execute(program: CompiledProgram, state: StateVector,
            rng: RngState) -> ClassicalStore:
    """Run the instructions in order against the state, returning the final
    classical register contents."""
    if program.qubit_map.total > 0 and state.n_qubits != program.qubit_map.total:
        raise StateSizeMismatch(
            f"program uses {program.qubit_map.total} qubits, state has "
            f"{state.n_qubits}")
    store = ClassicalStore(program.creg_sizes)
    for ins in program.instructions:
        _run_instruction(ins, state, store, rng)
    return store


def _run_instruction(ins: KernelInstruction, state: StateVector,
                     store: ClassicalStore, rng: RngState) -> None:
    if isinstance(ins, Apply1):
        state.apply_1q(ins.gate, ins.target)
    elif isinstance(ins, Apply2):
        state.apply_2q(ins.gate, ins.q0, ins.q1)
    elif isinstance(ins, MeasureBit):
        store.set_bit(ins.creg, ins.bit, state.measure(ins.qubit, rng))
    elif isinstance(ins, ResetQubit):
        state.reset(ins.qubit, rng)
    elif isinstance(ins, Conditional):
        if store.value(ins.creg) == ins.value:
            _run_instruction(ins.inner, state, store, rng)
    else:
        raise TypeError(f"unexpected instruction {ins!r}")


# --- one-call convenience -------------------------------------------------------

@dataclass
class RunResult:
    classical: ClassicalStore
    stats: ProgramStats
    final_norm: float
    state: StateVector = field(repr=False)


def _phase(name: str):
    class _Tag:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if isinstance(exc, EmulatorError) and exc.phase is None:
                exc.phase = name
            return False
    return _Tag()


def compile_source(source: str, include_base: str | Path = ".") -> CompiledProgram:
    """tokenize -> parse -> resolve includes -> compile, with phase tags."""
    with _phase("parse"):
        tree = parse_source(source)
    with _phase("include"):
        tree = resolve_includes(tree, include_base)
    with _phase("compile"):
        return compile_program(tree)


def run_source(source: str, precision: Precision = Precision.DOUBLE,
               seed: int = 0, config: ExecConfig | None = None,
               include_base: str | Path = ".") -> RunResult:
    """Compile and execute a program from source on a fresh |0...0> state."""
    program = compile_source(source, include_base)
    with _phase("allocate"):
        state = new_state(max(program.qubit_map.total, 1),
                          precision, config)
    rng = RngState(seed)
    with _phase("execute"):
        store = execute(program, state, rng)
    final_norm = math.sqrt(state.norm_sq())
    return RunResult(classical=store, stats=program.stats,
                     final_norm=final_norm, state=state)


# --- disassembly ------------------------------------------------------------------

def disassemble(program: CompiledProgram) -> str:
    """One instruction per line: opcode, operands, gate kind tag."""
    return "\n".join(_dis_one(ins) for ins in program.instructions) + "\n"


def _dis_one(ins: KernelInstruction) -> str:
    if isinstance(ins, Conditional):
        return f"if {ins.creg} == {ins.value}: {_dis_one(ins.inner)}"
    if isinstance(ins, Apply1):
        return f"apply1 {ins.gate.kind.value} q{ins.target}"
    if isinstance(ins, Apply2):
        tag = ins.gate.kind.value
        if ins.gate.kind.value == "cphase":
            tag += f"({ins.gate.phase:.6g})"
        return f"apply2 {tag} q{ins.q0}, q{ins.q1}"
    if isinstance(ins, MeasureBit):
        return f"measure q{ins.qubit} -> {ins.creg}[{ins.bit}]"
    if isinstance(ins, ResetQubit):
        return f"reset q{ins.qubit}"
    raise TypeError(f"unexpected instruction {ins!r}")
