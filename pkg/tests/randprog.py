"""Random circuit builder over the standard gate library, rendered both as
an op list (for the dense oracle) and as OpenQASM source (for the
emulator)."""
import numpy as np

import oracle

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

GATE_POOL = ["u3", "u2", "u1", "u0", "id", "x", "y", "z", "h", "s", "sdg",
             "t", "tdg", "rx", "ry", "rz", "cx", "cz", "cy", "ch", "crz",
             "cu1", "cu3", "ccx"]


def random_program(rng: np.random.Generator, n: int, length: int,
                   pool=GATE_POOL):
    ops = []
    for _ in range(length):
        name = pool[int(rng.integers(len(pool)))]
        arity, n_params, _ = oracle.STD_GATES[name]
        if arity > n:
            continue
        params = tuple(float(x)
                       for x in rng.uniform(-2 * np.pi, 2 * np.pi, n_params))
        qubits = tuple(int(q) for q in rng.choice(n, size=arity, replace=False))
        ops.append((name, params, qubits))
    return ops


def render_program(n: int, ops, cregs: int = 0, measure: bool = False) -> str:
    lines = [HEADER + f"qreg q[{n}];"]
    if cregs:
        lines.append(f"creg c[{cregs}];")
    for name, params, qubits in ops:
        ptxt = "(" + ", ".join(repr(p) for p in params) + ")" if params else ""
        lines.append(f"{name}{ptxt} " + ", ".join(f"q[{q}]" for q in qubits) + ";")
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"
