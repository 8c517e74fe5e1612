import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from wcrit.statevec import PureState, haar_state


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture
def haar_states(rng):
    return [haar_state(rng) for _ in range(200)]


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def pure_states(draw):
    x = np.array(draw(st.lists(finite, min_size=16, max_size=16)))
    amps = x[:8] + 1j * x[8:]
    if np.linalg.norm(amps) < 1e-3:
        amps = np.eye(8)[draw(st.integers(0, 7))]
    return PureState(amps, normalize=True)


gammas = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


# Independent operator construction for oracles: explicit kron loops, no
# shared code with wcrit.statevec.
PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def spin_oracle(qubit, axis):
    out = np.ones((1, 1), dtype=complex)
    for q in (1, 2, 3):
        out = np.kron(out, PAULI[axis] / 2 if q == qubit else np.eye(2))
    return out


def chirality_oracle(i, j, k):
    """s_i . (s_j x s_k) via the Levi-Civita sum."""
    axes = "xyz"
    out = np.zeros((8, 8), dtype=complex)
    for (a, b, c) in itertools.permutations(range(3)):
        sign = np.linalg.det(np.eye(3)[[a, b, c]])
        out += sign * (spin_oracle(i, axes[a]) @ spin_oracle(j, axes[b])
                       @ spin_oracle(k, axes[c]))
    return out


def expectation_oracle(matrix, amps):
    total = 0j
    for i in range(8):
        for j in range(8):
            total += np.conj(amps[i]) * matrix[i, j] * amps[j]
    return total


_CRITERIA: dict = {}


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    _CRITERIA[str(number)] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: (int(k.rstrip("b")), k)):
        terminalreporter.write_line(_CRITERIA[key])
