"""One- and two-qubit gate matrices with cached sparsity classification.

Classification lets the state-update kernels pick a cheaper loop than the
full tensor contraction: a diagonal gate is a per-amplitude scale, a
controlled-phase touches only the |11> sector, a permutation moves
amplitudes without any products against structural zeros.

Structural zeros are detected with absolute tolerance 1e-12; unitarity is
checked at 1e-6. Fast paths always read the actual matrix entries (never a
re-synthesized phase), so they agree with the dense path bit for bit.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import NotUnitary

ZERO_TOL = 1e-12
UNITARY_TOL = 1e-6


class GateKind(enum.Enum):
    DENSE = "dense"
    DIAGONAL = "diagonal"
    ANTIDIAGONAL = "antidiagonal"
    CONTROLLED_PHASE = "cphase"
    PERMUTATION = "permutation"


def _check_unitary(m: np.ndarray, dim: int) -> None:
    if m.shape != (dim, dim):
        raise NotUnitary(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    err = np.abs(m @ m.conj().T - np.eye(dim)).max()
    if err > UNITARY_TOL:
        raise NotUnitary(f"matrix is not unitary (deviation {err:.3e})")


@dataclass(frozen=True)
class Gate1:
    """2x2 unitary, row-major over the (|0>, |1>) basis."""

    m: np.ndarray = field(compare=False)
    kind: GateKind

    @classmethod
    def from_matrix(cls, m) -> "Gate1":
        m = np.asarray(m, dtype=np.complex128).copy()
        _check_unitary(m, 2)
        # Snap sub-tolerance entries so structural zeros are exact and the
        # sparse loops skip them without changing the applied map.
        m[np.abs(m) < ZERO_TOL] = 0.0
        if m[0, 1] == 0 and m[1, 0] == 0:
            kind = GateKind.DIAGONAL
        elif m[0, 0] == 0 and m[1, 1] == 0:
            kind = GateKind.ANTIDIAGONAL
        else:
            kind = GateKind.DENSE
        m.setflags(write=False)
        return cls(m, kind)


@dataclass(frozen=True)
class Gate2:
    """4x4 unitary over the local basis b_second * 2 + b_first.

    The first operand qubit is the least significant local bit. For
    CONTROLLED_PHASE, ``phase`` caches arg(m[3,3]).
    """

    m: np.ndarray = field(compare=False)
    kind: GateKind
    phase: float = 0.0

    @classmethod
    def from_matrix(cls, m) -> "Gate2":
        m = np.asarray(m, dtype=np.complex128).copy()
        _check_unitary(m, 4)
        m.setflags(write=False)
        kind, phase = _classify4(m)
        return cls(m, kind, phase)


def _classify4(m: np.ndarray) -> tuple[GateKind, float]:
    absm = np.abs(m)
    off_zero = True
    for r in range(4):
        for c in range(4):
            if r != c and absm[r, c] >= ZERO_TOL:
                off_zero = False
    if off_zero:
        if (abs(m[0, 0] - 1) < ZERO_TOL and abs(m[1, 1] - 1) < ZERO_TOL
                and abs(m[2, 2] - 1) < ZERO_TOL):
            return GateKind.CONTROLLED_PHASE, cmath.phase(m[3, 3])
        return GateKind.DIAGONAL, 0.0
    # Permutation: one unit-modulus entry per row and column, rest zero.
    if _is_permutation(absm):
        return GateKind.PERMUTATION, 0.0
    return GateKind.DENSE, 0.0


def _is_permutation(absm: np.ndarray) -> bool:
    for r in range(4):
        hits = [c for c in range(4) if absm[r, c] >= ZERO_TOL]
        if len(hits) != 1 or abs(absm[r, hits[0]] - 1.0) >= ZERO_TOL:
            return False
    for c in range(4):
        if sum(1 for r in range(4) if absm[r, c] >= ZERO_TOL) != 1:
            return False
    return True


def classify_gate2(m) -> Gate2:
    """Tag the most specific structure of a 4x4 unitary.

    Preference order: controlled-phase, diagonal, permutation, dense. The
    stored matrix is the input, unmodified.
    """
    return Gate2.from_matrix(m)


def permutation_table(gate: Gate2) -> tuple[np.ndarray, np.ndarray]:
    """Source index and factor per output row for a PERMUTATION gate:
    out[r] = factor[r] * in[src[r]]."""
    src = np.empty(4, dtype=np.int64)
    fac = np.empty(4, dtype=np.complex128)
    absm = np.abs(gate.m)
    for r in range(4):
        c = int(np.argmax(absm[r]))
        src[r] = c
        fac[r] = gate.m[r, c]
    return src, fac


# Bit flip, used by qubit reset.
X_GATE = Gate1.from_matrix([[0, 1], [1, 0]])
