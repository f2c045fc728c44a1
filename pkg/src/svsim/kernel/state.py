"""Exact quantum state storage and the native operations over it.

A StateVector owns one contiguous array of 2^n complex amplitudes and is
updated strictly in place: gate application, measurement collapse and reset
never allocate state-sized buffers. Operations may fan out over a worker
pool (one per ExecConfig, reused), splitting the disjoint group index space
into sub-ranges; reductions combine fixed-size chunk partials in ascending
order so every result is independent of the worker count.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    DegenerateProbability,
    DuplicateQubit,
    IndexOutOfRange,
    InvalidQubitCount,
    MemoryLimitExceeded,
    QubitOutOfRange,
)
from ..rng import RngState
from . import _kernels as _k
from .gates import Gate1, Gate2, GateKind, X_GATE, permutation_table

MIN_CHUNK_LEN = 1 << 14
DEGENERATE_P = 1e-15


class Precision(enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"

    @property
    def dtype(self):
        return np.complex64 if self is Precision.SINGLE else np.complex128

    @property
    def element_size(self) -> int:
        return 8 if self is Precision.SINGLE else 16

    @property
    def norm_tol(self) -> float:
        return 1e-6 if self is Precision.SINGLE else 1e-12


def state_footprint_bytes(n_qubits: int, precision: Precision) -> int:
    """Bytes needed to store 2^n amplitudes at the given precision."""
    return precision.element_size << n_qubits


def default_memory_limit() -> int:
    """75% of system RAM, or 8 GiB if the size cannot be queried."""
    try:
        total = os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_PHYS_PAGES")
        return int(total * 3 // 4)
    except (ValueError, OSError, AttributeError):
        return 1 << 33


@dataclass
class ExecConfig:
    """Worker count, sub-operation size and state allocation cap."""

    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    chunk_len: int = MIN_CHUNK_LEN
    memory_limit_bytes: int = field(default_factory=default_memory_limit)
    _pool: ThreadPoolExecutor | None = field(
        default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.chunk_len < MIN_CHUNK_LEN or self.chunk_len & (self.chunk_len - 1):
            raise ValueError(
                f"chunk_len must be a power of two >= {MIN_CHUNK_LEN}")
        if self.memory_limit_bytes < 16:
            raise ValueError("memory_limit_bytes too small for any state")

    def pool(self) -> ThreadPoolExecutor:
        if self._pool is None:
            self._pool = ThreadPoolExecutor(
                max_workers=self.threads, thread_name_prefix="svsim")
        return self._pool


class StateVector:
    """2^n complex amplitudes plus qubit count and precision tag."""

    __slots__ = ("n_qubits", "precision", "config", "_amps")

    def __init__(self, n_qubits: int, precision: Precision = Precision.DOUBLE,
                 config: ExecConfig | None = None):
        if n_qubits < 1:
            raise InvalidQubitCount(f"need at least 1 qubit, got {n_qubits}")
        config = config if config is not None else ExecConfig()
        need = state_footprint_bytes(n_qubits, precision)
        if need > config.memory_limit_bytes:
            raise MemoryLimitExceeded(
                f"state of {n_qubits} qubits needs {need} bytes, "
                f"limit is {config.memory_limit_bytes}")
        self.n_qubits = n_qubits
        self.precision = precision
        self.config = config
        # The single state-sized allocation this object ever makes.
        self._amps = np.zeros(1 << n_qubits, dtype=precision.dtype)
        self._amps[0] = 1.0

    @classmethod
    def from_amplitudes(cls, amps, precision: Precision = Precision.DOUBLE,
                        config: ExecConfig | None = None) -> "StateVector":
        """Build a state from an explicit amplitude sequence (diagnostics,
        tests). The sequence length must be a power of two."""
        amps = np.asarray(amps)
        n = max(len(amps), 1).bit_length() - 1
        if n < 1 or (1 << n) != len(amps):
            raise InvalidQubitCount("amplitude count must be a power of two >= 2")
        sv = cls(n, precision, config)
        sv._amps[:] = amps
        return sv

    # -- introspection ------------------------------------------------------

    @property
    def footprint_bytes(self) -> int:
        return state_footprint_bytes(self.n_qubits, self.precision)

    def amplitude(self, index: int) -> complex:
        if not 0 <= index < (1 << self.n_qubits):
            raise IndexOutOfRange(
                f"index {index} out of range for {self.n_qubits} qubits")
        return complex(self._amps[index])

    def copy_amplitudes(self) -> np.ndarray:
        """Copy the amplitudes out (never a view of the live buffer)."""
        return self._amps.copy()

    def norm_sq(self) -> float:
        total = 1 << self.n_qubits
        ipc = min(self.config.chunk_len, total)
        n_chunks = (total + ipc - 1) // ipc
        partials = np.zeros(n_chunks, dtype=np.float64)
        self._run_chunks(n_chunks,
                         lambda c0, c1: _k.normsq_chunks(
                             self._amps, ipc, total, c0, c1, partials))
        acc = 0.0
        for p in partials:
            acc += p
        return acc

    # -- gate application ---------------------------------------------------

    def apply_1q(self, gate: Gate1, target: int) -> None:
        self._check_qubit(target)
        dt = self.precision.dtype
        m = gate.m
        groups = 1 << (self.n_qubits - 1)
        if gate.kind is GateKind.DIAGONAL:
            m00, m11 = dt(m[0, 0]), dt(m[1, 1])
            run = lambda g0, g1: _k.apply1_diag(
                self._amps, m00, m11, target, g0, g1)
        elif gate.kind is GateKind.ANTIDIAGONAL:
            m01, m10 = dt(m[0, 1]), dt(m[1, 0])
            run = lambda g0, g1: _k.apply1_anti(
                self._amps, m01, m10, target, g0, g1)
        else:
            m00, m01 = dt(m[0, 0]), dt(m[0, 1])
            m10, m11 = dt(m[1, 0]), dt(m[1, 1])
            run = lambda g0, g1: _k.apply1_dense(
                self._amps, m00, m01, m10, m11, target, g0, g1)
        self._run_groups(groups, 2, run)

    def apply_2q(self, gate: Gate2, q0: int, q1: int) -> None:
        self._check_qubit(q0)
        self._check_qubit(q1)
        if q0 == q1:
            raise DuplicateQubit(f"two-qubit gate needs distinct qubits, got {q0} twice")
        dt = self.precision.dtype
        groups = 1 << (self.n_qubits - 2)
        if gate.kind is GateKind.CONTROLLED_PHASE:
            f = dt(gate.m[3, 3])
            run = lambda g0, g1: _k.apply2_cphase(
                self._amps, f, q0, q1, g0, g1)
        elif gate.kind is GateKind.DIAGONAL:
            d = np.ascontiguousarray(np.diag(gate.m).astype(dt))
            run = lambda g0, g1: _k.apply2_diag(
                self._amps, d, q0, q1, g0, g1)
        elif gate.kind is GateKind.PERMUTATION:
            src, fac = permutation_table(gate)
            fac = fac.astype(dt)
            run = lambda g0, g1: _k.apply2_perm(
                self._amps, src, fac, q0, q1, g0, g1)
        else:
            m = np.ascontiguousarray(gate.m.astype(dt))
            run = lambda g0, g1: _k.apply2_dense(
                self._amps, m, q0, q1, g0, g1)
        self._run_groups(groups, 4, run)

    # -- measurement --------------------------------------------------------

    def probability_zero(self, qubit: int) -> float:
        self._check_qubit(qubit)
        groups = 1 << (self.n_qubits - 1)
        gpc = max(1, min(self.config.chunk_len, 1 << self.n_qubits) // 2)
        n_chunks = (groups + gpc - 1) // gpc
        partials = np.zeros(n_chunks, dtype=np.float64)
        self._run_chunks(n_chunks,
                         lambda c0, c1: _k.prob0_chunks(
                             self._amps, qubit, gpc, groups, c0, c1, partials))
        acc = 0.0
        for p in partials:
            acc += p
        return acc

    def measure(self, qubit: int, rng: RngState) -> int:
        p0 = self.probability_zero(qubit)
        u = rng.uniform()
        outcome = 0 if u < p0 else 1
        p = p0 if outcome == 0 else 1.0 - p0
        if p < DEGENERATE_P:
            raise DegenerateProbability(
                f"sampled outcome {outcome} of qubit {qubit} has probability {p:.3e}")
        scale = self._real_scalar(1.0 / math.sqrt(p))
        total = 1 << self.n_qubits
        ipc = min(self.config.chunk_len, total)
        n_items = (total + ipc - 1) // ipc
        self._run_chunks(n_items,
                         lambda c0, c1: _k.collapse(
                             self._amps, qubit, outcome, scale,
                             c0 * ipc, min(c1 * ipc, total)))
        return outcome

    def reset(self, qubit: int, rng: RngState) -> None:
        if self.measure(qubit, rng) == 1:
            self.apply_1q(X_GATE, qubit)

    # -- internals ----------------------------------------------------------

    def _check_qubit(self, q: int) -> None:
        if not 0 <= q < self.n_qubits:
            raise QubitOutOfRange(
                f"qubit {q} out of range for {self.n_qubits}-qubit state")

    def _real_scalar(self, x: float):
        return np.float32(x) if self.precision is Precision.SINGLE else np.float64(x)

    def _run_groups(self, total_groups: int, span: int, run) -> None:
        cfg = self.config
        if cfg.threads == 1 or (span * total_groups) <= cfg.chunk_len:
            run(0, total_groups)
            return
        gpc = max(1, cfg.chunk_len // span)
        n_chunks = (total_groups + gpc - 1) // gpc
        futures = []
        for c0, c1 in self._worker_spans(n_chunks):
            g0 = c0 * gpc
            g1 = min(c1 * gpc, total_groups)
            futures.append(cfg.pool().submit(run, g0, g1))
        for f in futures:
            f.result()

    def _run_chunks(self, n_chunks: int, run) -> None:
        cfg = self.config
        if cfg.threads == 1 or n_chunks <= 1:
            run(0, n_chunks)
            return
        futures = [cfg.pool().submit(run, c0, c1)
                   for c0, c1 in self._worker_spans(n_chunks)]
        for f in futures:
            f.result()

    def _worker_spans(self, n_chunks: int):
        k = min(self.config.threads, n_chunks)
        spans = []
        for w in range(k):
            c0 = w * n_chunks // k
            c1 = (w + 1) * n_chunks // k
            if c1 > c0:
                spans.append((c0, c1))
        return spans


def new_state(n_qubits: int, precision: Precision = Precision.DOUBLE,
              config: ExecConfig | None = None) -> StateVector:
    """Allocate the all-zeros computational state |0...0>."""
    return StateVector(n_qubits, precision, config)
