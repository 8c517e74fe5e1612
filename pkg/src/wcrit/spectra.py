"""Block matrices P, F, G, their common eigenbasis, and state decomposition.

The block matrices are written in the paper ordering (c1, ..., c8), where the
one-excitation amplitudes (c2, c3, c4) and two-excitation amplitudes
(c5, c6, c7) form contiguous 3x3 blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .statevec import PAPER_ORDER, Operator, PureState

SQRT3 = np.sqrt(3.0)

P_BLOCK = np.array([[0, 1j, -1j],
                    [-1j, 0, 1j],
                    [1j, -1j, 0]])
G_BLOCK = np.array([[2, 1, 1],
                    [1, 2, 1],
                    [1, 1, 2]], dtype=complex)

KINDS = ("P", "F", "G")

# (lambda, alpha, beta) eigenvalues of (P, F, G) on psi_1 .. psi_8
EIGENVALUES = {
    "P": (-SQRT3, -SQRT3, SQRT3, SQRT3, 0.0, 0.0, 0.0, 0.0),
    "F": (3.0, 3.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0),
    "G": (1.0, 1.0, 1.0, 1.0, 0.0, 4.0, 4.0, 0.0),
}

POPULATION_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    kind: str
    entries: np.ndarray  # paper ordering

    def as_operator(self) -> Operator:
        """The same matrix re-indexed to lexicographic order."""
        idx = list(PAPER_ORDER)
        lex = np.empty_like(self.entries)
        lex[np.ix_(idx, idx)] = self.entries
        return Operator(lex)


def _blocks(one: np.ndarray, two: np.ndarray) -> np.ndarray:
    m = np.zeros((8, 8), dtype=complex)
    m[1:4, 1:4] = one
    m[4:7, 4:7] = two
    return m


@lru_cache(maxsize=None)
def build_block_matrix(kind: str) -> BlockMatrix:
    """Construct ``P``, ``F`` or ``G`` (the calligraphic 8x8 matrices)."""
    if kind == "P":
        entries = _blocks(P_BLOCK, P_BLOCK.T)
    elif kind == "F":
        p2 = P_BLOCK @ P_BLOCK
        entries = _blocks(p2, p2)
    elif kind == "G":
        entries = _blocks(G_BLOCK, G_BLOCK)
    else:
        raise ValueError(f"kind: must be one of {KINDS}, got {kind!r}")
    entries.setflags(write=False)
    return BlockMatrix(kind, entries)


@lru_cache(maxsize=None)
def block_operator(kind: str) -> Operator:
    return build_block_matrix(kind).as_operator()


_W1 = np.exp(2j * np.pi / 3)
_W2 = np.exp(4j * np.pi / 3)

# amplitudes over basis labels, times sqrt(3) for the superpositions
_EIGENSTATE_TERMS = {
    1: {"011": _W2, "101": _W1, "110": 1.0},
    2: {"001": _W1, "010": _W2, "100": 1.0},
    3: {"011": _W1, "101": _W2, "110": 1.0},
    4: {"001": _W2, "010": _W1, "100": 1.0},
    5: {"111": SQRT3},
    6: {"011": 1.0, "101": 1.0, "110": 1.0},
    7: {"001": 1.0, "010": 1.0, "100": 1.0},
    8: {"000": SQRT3},
}


@lru_cache(maxsize=None)
def eigenstate(index: int) -> PureState:
    """The common eigenvector ``|psi_index>`` of P, F and G (1-based)."""
    if index not in _EIGENSTATE_TERMS:
        raise ValueError(f"index: must be in 1..8, got {index!r}")
    vec = np.zeros(8, dtype=complex)
    for label, amp in _EIGENSTATE_TERMS[index].items():
        vec[int(label, 2)] = amp / SQRT3
    return PureState(vec)


@lru_cache(maxsize=None)
def eigenbasis() -> np.ndarray:
    """Columns are psi_1 .. psi_8 in lexicographic order."""
    basis = np.column_stack([eigenstate(i).amps for i in range(1, 9)])
    basis.setflags(write=False)
    return basis


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Populations ``p_i`` and phases ``phi_i`` over psi_1 .. psi_8.

    Arrays are 0-based: ``populations[0]`` is p_1.
    """

    populations: np.ndarray
    phases: np.ndarray

    def p(self, i: int) -> float:
        return float(self.populations[i - 1])

    def phi(self, i: int) -> float:
        return float(self.phases[i - 1])

    @property
    def excited_weight(self) -> float:
        """Sum of p_1 .. p_7 (everything except |000>)."""
        return float(np.sum(self.populations[:7]))

    def reconstruct(self) -> PureState:
        coeffs = np.sqrt(self.populations) * np.exp(1j * self.phases)
        return PureState(eigenbasis() @ coeffs, normalize=True)


def decompose(state: PureState) -> EigenDecomposition:
    """Expand ``state`` as sum_i sqrt(p_i) e^{i phi_i} |psi_i>.

    The global phase is fixed by setting the phase of the first populated
    component to zero; phases of components with p_i < 1e-14 are 0.
    """
    overlaps = eigenbasis().conj().T @ state.amps
    populations = np.abs(overlaps) ** 2
    populated = populations >= POPULATION_FLOOR
    phases = np.zeros(8)
    if np.any(populated):
        ref = np.angle(overlaps[np.argmax(populated)])
        phases[populated] = np.mod(np.angle(overlaps[populated]) - ref, 2 * np.pi)
        # mod can return 2*pi for tiny negative arguments
        phases[phases >= 2 * np.pi] = 0.0
    return EigenDecomposition(populations, phases)


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns
    degeneracies: tuple[tuple[float, int], ...]
    max_residual: float


def _group(values: np.ndarray, tol: float) -> tuple[tuple[float, int], ...]:
    groups: list[list[float]] = []
    for v in values:
        if groups and abs(v - groups[-1][-1]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return tuple((float(np.mean(g)), len(g)) for g in groups)


def eigen_solve(op: Operator, degeneracy_tol: float = 1e-9) -> SpectrumReport:
    """Hermitian eigendecomposition with per-pair residual check."""
    if not op.hermitian:
        raise ValueError("op: eigen_solve requires a Hermitian operator")
    values, vectors = np.linalg.eigh(op.matrix)
    residual = np.max(np.linalg.norm(op.matrix @ vectors - vectors * values, axis=0))
    return SpectrumReport(values, vectors, _group(values, degeneracy_tol),
                          float(residual))


def eigenspace_projector(report: SpectrumReport, value: float,
                         tol: float = 1e-9) -> np.ndarray:
    """Projector onto the eigenspace of ``value``; canonical under degeneracy."""
    cols = report.eigenvectors[:, np.abs(report.eigenvalues - value) <= tol]
    return cols @ cols.conj().T
