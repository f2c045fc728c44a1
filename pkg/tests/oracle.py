"""Independent dense matrix-vector oracle.

Builds the full 2^n x 2^n operator for a gate on chosen qubits and applies
it by plain matrix-vector multiplication. Shares only the index convention
with the emulator (little-endian: qubit q is bit q of the basis index; the
first operand of a multi-qubit gate is the least significant local bit) and
nothing of its bit-strided update loops.

Gate matrices are written from closed forms here, independently of the
compiler's lowering path.
"""
from __future__ import annotations

import cmath
import math

import numpy as np


def embed(local: np.ndarray, qubits: list[int], n: int) -> np.ndarray:
    """Full 2^n operator applying ``local`` to ``qubits`` (qubits[j] is
    local bit j) and identity elsewhere."""
    k = len(qubits)
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        loc = 0
        for j, q in enumerate(qubits):
            loc |= ((i >> q) & 1) << j
        base = i
        for j, q in enumerate(qubits):
            base &= ~(1 << q)
        for loc_out in range(1 << k):
            amp = local[loc_out, loc]
            if amp == 0:
                continue
            i_out = base
            for j, q in enumerate(qubits):
                i_out |= ((loc_out >> j) & 1) << q
            full[i_out, i] += amp
    return full


def apply(state: np.ndarray, local: np.ndarray, qubits: list[int]) -> np.ndarray:
    n = int(math.log2(len(state)))
    return embed(local, qubits, n) @ state


def controlled(base: np.ndarray, n_controls: int = 1) -> np.ndarray:
    """Controlled gate with controls on the LOW local bits and the target
    block on the high bits, matching operand order (controls first)."""
    kb = int(math.log2(base.shape[0]))
    k = n_controls + kb
    dim = 1 << k
    cmask = (1 << n_controls) - 1
    out = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(dim):
        if (i & cmask) == cmask:
            hi = i >> n_controls
            for hj in range(1 << kb):
                out[(hj << n_controls) | cmask, i] = base[hj, hi]
        else:
            out[i, i] = 1.0
    return out


_SQ2 = 1.0 / math.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128)
S = np.diag([1, 1j]).astype(np.complex128)
SDG = np.diag([1, -1j]).astype(np.complex128)
T = np.diag([1, cmath.exp(1j * math.pi / 4)])
TDG = np.diag([1, cmath.exp(-1j * math.pi / 4)])
CX = embed(controlled(X), [0, 1], 2)  # control = local bit 0


def u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return np.array([
        [c, -cmath.exp(1j * lam) * s],
        [cmath.exp(1j * phi) * s, cmath.exp(1j * (lam + phi)) * c],
    ])


def u2(phi: float, lam: float) -> np.ndarray:
    return np.array([
        [_SQ2, -cmath.exp(1j * lam) * _SQ2],
        [cmath.exp(1j * phi) * _SQ2, cmath.exp(1j * (lam + phi)) * _SQ2],
    ])


def u1(lam: float) -> np.ndarray:
    return np.diag([1.0, cmath.exp(1j * lam)])


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def rz_textbook(lam: float) -> np.ndarray:
    return np.diag([cmath.exp(-1j * lam / 2), cmath.exp(1j * lam / 2)])


# Semantics of each standard-library gate: (arity, n_params, local matrix
# builder in operand order). ``rz`` is the phase gate here, as the standard
# library defines it (u1), which differs from the textbook Rz by a global
# phase that a state comparison would see.
STD_GATES = {
    "u3": (1, 3, u3),
    "u2": (1, 2, u2),
    "u1": (1, 1, u1),
    "u0": (1, 1, lambda g: I2),
    "id": (1, 0, lambda: I2),
    "x": (1, 0, lambda: X),
    "y": (1, 0, lambda: Y),
    "z": (1, 0, lambda: Z),
    "h": (1, 0, lambda: H),
    "s": (1, 0, lambda: S),
    "sdg": (1, 0, lambda: SDG),
    "t": (1, 0, lambda: T),
    "tdg": (1, 0, lambda: TDG),
    "rx": (1, 1, rx),
    "ry": (1, 1, ry),
    "rz": (1, 1, u1),
    "cx": (2, 0, lambda: controlled(X)),
    "cz": (2, 0, lambda: controlled(Z)),
    "cy": (2, 0, lambda: controlled(Y)),
    "ch": (2, 0, lambda: controlled(H)),
    "crz": (2, 1, lambda lam: controlled(rz_textbook(lam))),
    "cu1": (2, 1, lambda lam: controlled(u1(lam))),
    "cu3": (2, 3, lambda th, ph, lam: controlled(u3(th, ph, lam))),
    "ccx": (3, 0, lambda: controlled(X, n_controls=2)),
}


def std_gate_matrix(name: str, params: tuple[float, ...] = ()) -> np.ndarray:
    arity, n_params, build = STD_GATES[name]
    assert len(params) == n_params, (name, params)
    return np.asarray(build(*params), dtype=np.complex128)


def run_gate_list(n: int, ops: list[tuple[str, tuple, tuple]]) -> np.ndarray:
    """Apply (name, params, qubits) ops to |0...0> by dense matvec."""
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    for name, params, qubits in ops:
        state = apply(state, std_gate_matrix(name, params), list(qubits))
    return state


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)
