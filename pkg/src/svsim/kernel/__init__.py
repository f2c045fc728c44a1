from .gates import Gate1, Gate2, GateKind, classify_gate2, X_GATE
from .state import (
    ExecConfig,
    Precision,
    StateVector,
    default_memory_limit,
    new_state,
    state_footprint_bytes,
)

__all__ = [
    "ExecConfig",
    "Gate1",
    "Gate2",
    "GateKind",
    "Precision",
    "StateVector",
    "X_GATE",
    "classify_gate2",
    "default_memory_limit",
    "new_state",
    "state_footprint_bytes",
]
