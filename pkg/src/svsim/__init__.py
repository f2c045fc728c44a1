"""svsim: exact state-vector emulation of a gate-based quantum processor.

The kernel stores 2^n complex amplitudes contiguously and updates them in
place; the OpenQASM 2.0 frontend and virtual machine compile circuits down
to the kernel's flat one- and two-qubit instruction set; the bench module
reruns circuits and reports wall-clock statistics.
"""
from .errors import EmulatorError
from .kernel import (
    ExecConfig,
    Gate1,
    Gate2,
    GateKind,
    Precision,
    StateVector,
    classify_gate2,
    new_state,
    state_footprint_bytes,
)
from .rng import RngState

__version__ = "0.1.0"
