"""Dense 3-qubit pure states and 8x8 operators.

Amplitudes are stored in lexicographic order ``|abc>`` with index ``4a + 2b + c``
(qubit 1 is the most significant bit). Spin operators use hbar = 1, so
``s = sigma / 2``.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from typing import Iterable

import numpy as np

DIM = 8
NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-12

# Lexicographic index of the amplitudes c1..c8 in "paper" order:
# |000>, |001>, |010>, |100>, |011>, |101>, |110>, |111>.
PAPER_ORDER = (0, 1, 2, 4, 3, 5, 6, 7)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class StateError(ValueError):
    """Raised for malformed or non-normalized state input."""


def to_paper_order(amps: np.ndarray) -> np.ndarray:
    """Reorder lexicographic amplitudes into (c1, ..., c8)."""
    return np.asarray(amps)[list(PAPER_ORDER)]


def from_paper_order(c: np.ndarray) -> np.ndarray:
    # the permutation is an involution
    return np.asarray(c)[list(PAPER_ORDER)]


class PureState:
    """Normalized 3-qubit state vector, immutable after construction.

    Args:
        amps: eight complex amplitudes in lexicographic order.
        normalize: rescale to unit norm instead of rejecting.
        norm_tol: allowed deviation of the squared norm from 1.
    """

    __slots__ = ("_amps", "norm_tol")

    def __init__(self, amps: Iterable[complex], *, normalize: bool = False,
                 norm_tol: float = NORM_TOL):
        vec = np.array(amps, dtype=complex).reshape(-1)
        if vec.shape != (DIM,):
            raise StateError(f"amps: expected {DIM} amplitudes, got {vec.size}")
        if not np.all(np.isfinite(vec)):
            raise StateError("amps: non-finite amplitude")
        norm2 = float(np.vdot(vec, vec).real)
        if normalize:
            if norm2 == 0.0:
                raise StateError("amps: cannot normalize the zero vector")
            vec = vec / np.sqrt(norm2)
        elif abs(norm2 - 1.0) > norm_tol:
            raise StateError(f"amps: squared norm {norm2!r} differs from 1 "
                             f"by more than {norm_tol:g}")
        vec.setflags(write=False)
        self._amps = vec
        self.norm_tol = norm_tol

    @classmethod
    def from_paper(cls, c: Iterable[complex], **kwargs) -> "PureState":
        """Build from amplitudes given in (c1, ..., c8) order."""
        return cls(from_paper_order(np.array(c, dtype=complex).reshape(-1)),
                   **kwargs)

    @classmethod
    def basis(cls, label: str) -> "PureState":
        """Computational basis state, e.g. ``PureState.basis("010")``."""
        if len(label) != 3 or set(label) - {"0", "1"}:
            raise StateError(f"label: invalid basis label {label!r}")
        vec = np.zeros(DIM, dtype=complex)
        vec[int(label, 2)] = 1.0
        return cls(vec)

    @property
    def amps(self) -> np.ndarray:
        return self._amps

    @property
    def paper(self) -> np.ndarray:
        return to_paper_order(self._amps)

    def with_phase(self, theta: float) -> "PureState":
        return PureState(np.exp(1j * theta) * self._amps)

    def canonical(self) -> "PureState":
        """Same ray, global phase fixed so the largest amplitude is real positive."""
        k = int(np.argmax(np.abs(self._amps)))
        phase = self._amps[k] / abs(self._amps[k])
        return PureState(self._amps / phase, normalize=True)

    def __repr__(self) -> str:
        return f"PureState({np.array2string(self._amps, precision=4)})"


class Operator:
    """An 8x8 complex matrix acting on the 3-qubit space."""

    __slots__ = ("matrix", "hermitian")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.shape != (DIM, DIM):
            raise ValueError(f"matrix: expected shape (8, 8), got {m.shape}")
        m.setflags(write=False)
        self.matrix = m
        self.hermitian = bool(np.max(np.abs(m - m.conj().T)) <= HERMITIAN_TOL)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            return Operator(self.matrix @ other.matrix)
        if isinstance(other, PureState):
            return self.matrix @ other.amps
        return self.matrix @ np.asarray(other)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(scalar * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.matrix)

    def dagger(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def allclose(self, other: "Operator", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - other.matrix)) <= atol)

    def __repr__(self) -> str:
        return f"Operator(hermitian={self.hermitian})"


def identity() -> Operator:
    return Operator(np.eye(DIM))


def zero() -> Operator:
    return Operator(np.zeros((DIM, DIM)))


@lru_cache(maxsize=None)
def embed_spin(qubit: int, axis: str) -> Operator:
    """Spin component ``s_{qubit,axis} = sigma_axis / 2`` on one qubit.

    >>> float(expectation(embed_spin(1, "z"), PureState.basis("000")).real)
    0.5
    """
    if qubit not in (1, 2, 3):
        raise ValueError(f"qubit_index: must be 1, 2 or 3, got {qubit!r}")
    if axis not in _PAULI:
        raise ValueError(f"axis: must be 'x', 'y' or 'z', got {axis!r}")
    factors = [np.eye(2, dtype=complex)] * 3
    factors[qubit - 1] = _PAULI[axis] / 2
    return Operator(reduce(np.kron, factors))


PAIRS = ((1, 2), (2, 3), (3, 1))


def pair_hamiltonian(pair: tuple[int, int], gamma: float) -> Operator:
    """XXZ coupling ``s_ix s_jx + s_iy s_jy + gamma s_iz s_jz``."""
    pair = tuple(pair)
    if pair not in PAIRS:
        raise ValueError(f"pair: must be one of {PAIRS}, got {pair!r}")
    if not np.isfinite(gamma):
        raise ValueError(f"gamma: must be finite, got {gamma!r}")
    i, j = pair
    xx = embed_spin(i, "x") @ embed_spin(j, "x")
    yy = embed_spin(i, "y") @ embed_spin(j, "y")
    zz = embed_spin(i, "z") @ embed_spin(j, "z")
    return xx + yy + float(gamma) * zz


def expectation(op: Operator, state: PureState) -> complex:
    return complex(np.vdot(state.amps, op.matrix @ state.amps))


def variance(op: Operator, state: PureState) -> float:
    """``<A^2> - <A>^2`` for Hermitian ``A``, clipped at zero."""
    if not op.hermitian:
        raise ValueError("op: variance requires a Hermitian operator")
    applied = op.matrix @ state.amps
    second = float(np.vdot(applied, applied).real)
    first = float(np.vdot(state.amps, applied).real)
    return max(second - first * first, 0.0)


def std_dev(op: Operator, state: PureState) -> float:
    return float(np.sqrt(variance(op, state)))


def commutator(a: Operator, b: Operator) -> Operator:
    return Operator(a.matrix @ b.matrix - b.matrix @ a.matrix)


def inner(a: PureState, b: PureState) -> complex:
    return complex(np.vdot(a.amps, b.amps))


def fidelity_up_to_phase(a: PureState, b: PureState) -> float:
    """``|<a|b>|``; equals 1 exactly when the rays coincide."""
    return float(min(abs(inner(a, b)), 1.0))


def local_product(u: np.ndarray) -> np.ndarray:
    """``U (x) U (x) U`` for a single-qubit 2x2 matrix ``U``."""
    u = np.asarray(u, dtype=complex)
    return np.kron(np.kron(u, u), u)


def haar_state(rng: np.random.Generator) -> PureState:
    """Haar-random pure state from normalized complex Gaussians."""
    z = rng.standard_normal(DIM) + 1j * rng.standard_normal(DIM)
    return PureState(z, normalize=True)
