"""Property tests over kernel and expression invariants."""
import math

import numpy as np
from hypothesis import given, settings, strategies as st

import oracle
from svsim import ExecConfig, Gate1, Gate2, new_state
from svsim.qasm import eval_param, parse_source
from svsim.qasm.ast import to_source
from svsim.rng import RngState

CFG = ExecConfig(threads=1)


def _gate_ops(draw_seed, n, length):
    rng = np.random.default_rng(draw_seed)
    ops = []
    for _ in range(length):
        if rng.random() < 0.6 or n == 1:
            ops.append((oracle.random_unitary(2, rng),
                        (int(rng.integers(n)),)))
        else:
            q0, q1 = (int(x) for x in rng.choice(n, size=2, replace=False))
            ops.append((oracle.random_unitary(4, rng), (q0, q1)))
    return ops


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6),
       length=st.integers(0, 30))
def test_norm_stays_one_under_random_ops(seed, n, length):
    st_ = new_state(n, config=CFG)
    for m, qubits in _gate_ops(seed, n, length):
        if len(qubits) == 1:
            st_.apply_1q(Gate1.from_matrix(m), qubits[0])
        else:
            st_.apply_2q(Gate2.from_matrix(m), *qubits)
    assert abs(st_.norm_sq() - 1.0) < 1e-12


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6),
       qubit_seed=st.integers(0, 99))
def test_probabilities_sum_to_one(seed, n, qubit_seed):
    st_ = new_state(n, config=CFG)
    for m, qubits in _gate_ops(seed, n, 10):
        if len(qubits) == 1:
            st_.apply_1q(Gate1.from_matrix(m), qubits[0])
        else:
            st_.apply_2q(Gate2.from_matrix(m), *qubits)
    q = qubit_seed % n
    p0 = st_.probability_zero(q)
    assert 0.0 <= p0 <= 1.0 + 1e-12
    # measuring both branches partitions the norm
    st2 = new_state(n, config=CFG)
    assert st2.probability_zero(0) == 1.0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_measure_then_probability_is_zero_or_one(seed):
    rng = np.random.default_rng(seed)
    from svsim.kernel import StateVector
    v = oracle.random_state(4, rng)
    st_ = StateVector.from_amplitudes(v, config=CFG)
    q = int(rng.integers(4))
    outcome = st_.measure(q, RngState(seed))
    want = 1.0 if outcome == 0 else 0.0
    assert abs(st_.probability_zero(q) - want) < 1e-12
    assert abs(st_.norm_sq() - 1.0) < 1e-12


# --- expression properties -----------------------------------------------------

_exprs = st.recursive(
    st.one_of(
        st.integers(0, 9).map(lambda v: str(v)),
        st.floats(0.001, 100.0, allow_nan=False).map(lambda v: repr(v)),
        st.just("pi"),
    ),
    lambda inner: st.one_of(
        st.tuples(st.sampled_from("+-*/^"), inner, inner)
        .map(lambda t: f"({t[1]} {t[0]} {t[2]})"),
        st.tuples(st.sampled_from(["sin", "cos", "exp"]), inner)
        .map(lambda t: f"{t[0]}({t[1]})"),
        inner.map(lambda e: f"(-{e})"),
    ),
    max_leaves=8,
)


@settings(max_examples=60, deadline=None)
@given(text=_exprs)
def test_expression_print_parse_eval_round_trip(text):
    src = f"OPENQASM 2.0;\nqreg q[1];\nU({text}, 0, 0) q[0];\n"
    tree = parse_source(src)
    expr = tree.items[-1].theta
    try:
        value = eval_param(expr)
    except Exception:
        return  # overflow or domain error: not this test's concern
    reparsed = parse_source(to_source(tree))
    assert reparsed == tree
    assert eval_param(reparsed.items[-1].theta) == value
    assert math.isfinite(value)
