import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from svsim import ExecConfig, Gate1, Gate2, Precision, new_state  # noqa: E402


@pytest.fixture
def cfg():
    return ExecConfig(threads=1)


@pytest.fixture
def cfg_mt():
    return ExecConfig(threads=4)


def warm_kernels():
    """Trigger jit compilation of every kernel path once, for both dtypes,
    so timing- and allocation-sensitive tests see steady state."""
    import svsim
    from svsim.rng import RngState

    for precision in (Precision.SINGLE, Precision.DOUBLE):
        st = new_state(2, precision, ExecConfig(threads=1))
        h = Gate1.from_matrix(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
        z = Gate1.from_matrix([[1, 0], [0, -1]])
        x = svsim.kernel.X_GATE
        st.apply_1q(h, 0)
        st.apply_1q(z, 0)
        st.apply_1q(x, 0)
        cphase = Gate2.from_matrix(np.diag([1, 1, 1, 1j]))
        diag = Gate2.from_matrix(np.diag([1, -1, 1j, 1]))
        perm = Gate2.from_matrix(
            [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
        dense = Gate2(m=np.asarray(np.diag([1, 1, 1, 1j]), dtype=np.complex128),
                      kind=svsim.GateKind.DENSE)
        for g in (cphase, diag, perm, dense):
            st.apply_2q(g, 0, 1)
        st.probability_zero(0)
        st.norm_sq()
        st.measure(0, RngState(1))
        st.reset(1, RngState(2))


@pytest.fixture(scope="session")
def warmed():
    warm_kernels()
    return True
