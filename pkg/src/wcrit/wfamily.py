"""Critical (saturating) state families and their local equivalence to W.

Family ``c1`` is ``sqrt(1-p)|psi_1> + sqrt(p) e^{i phi}|psi_2>``, family ``c2``
the same combination of ``|psi_3>`` and ``|psi_4>``. Rotating every qubit into
the matching primed basis turns each member into a phased W state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .spectra import eigenstate
from .statevec import PureState, fidelity_up_to_phase, local_product

FAMILIES = ("c1", "c2")

_FAMILY_PAIRS = {"c1": (1, 2), "c2": (3, 4)}
# phase in the primed basis and (|001>, |010>) phases of the W target
_BASIS_PHASE = {"c1": 4 * np.pi / 3, "c2": 2 * np.pi / 3}
_TARGET_PHASES = {"c1": (2 * np.pi / 3, 4 * np.pi / 3),
                  "c2": (4 * np.pi / 3, 2 * np.pi / 3)}


@dataclass(frozen=True)
class CriticalParams:
    family: str
    p: float
    phi: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family: must be one of {FAMILIES}, got {self.family!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p: must lie in [0, 1], got {self.p!r}")
        if not np.isfinite(self.phi):
            raise ValueError(f"phi: must be finite, got {self.phi!r}")

    @property
    def eigenstate_pair(self) -> tuple[int, int]:
        return _FAMILY_PAIRS[self.family]


@dataclass(frozen=True, eq=False)
class LocalBasis:
    zero_prime: np.ndarray
    one_prime: np.ndarray

    def to_computational(self) -> np.ndarray:
        """Unitary sending |0'> to |0> and |1'> to |1>."""
        return np.vstack([self.zero_prime.conj(), self.one_prime.conj()])


def critical_state(params: CriticalParams) -> PureState:
    first, second = params.eigenstate_pair
    amps = (np.sqrt(1.0 - params.p) * eigenstate(first).amps
            + np.sqrt(params.p) * np.exp(1j * params.phi) * eigenstate(second).amps)
    return PureState(amps, normalize=True)


def primed_basis(params: CriticalParams) -> LocalBasis:
    """``|0'> = sqrt(p)|0> - sqrt(1-p) e^{i theta}|1>``, ``|1'> = sqrt(1-p)|0> + sqrt(p) e^{i theta}|1>``.

    ``theta = 4 pi/3 - phi`` for family c1 and ``2 pi/3 - phi`` for c2.
    """
    p = params.p
    rot = np.exp(1j * (_BASIS_PHASE[params.family] - params.phi))
    zero = np.array([np.sqrt(p), -np.sqrt(1.0 - p) * rot])
    one = np.array([np.sqrt(1.0 - p), np.sqrt(p) * rot])
    return LocalBasis(zero, one)


def w_target(family: str) -> PureState:
    """Phased W state reached by the primed-basis rotation of ``family``."""
    if family not in FAMILIES:
        raise ValueError(f"family: must be one of {FAMILIES}, got {family!r}")
    a, b = _TARGET_PHASES[family]
    amps = np.zeros(8, dtype=complex)
    amps[0b001] = np.exp(1j * a)
    amps[0b010] = np.exp(1j * b)
    amps[0b100] = 1.0
    return PureState(amps / np.sqrt(3.0))


def verify_w_equivalence(params: CriticalParams,
                         state: Optional[PureState] = None) -> float:
    """Fidelity between ``U(x)U(x)U |state>`` and the phased W target.

    ``state`` defaults to ``critical_state(params)``; passing another state
    applies the same rotation to it.
    """
    if state is None:
        state = critical_state(params)
    u = primed_basis(params).to_computational()
    rotated = PureState(local_product(u) @ state.amps, normalize=True)
    return fidelity_up_to_phase(rotated, w_target(params.family))


STANDARD_NAMES = ("W", "GHZ", "product000", "product111", "zero_bell",
                  *(f"psi{i}" for i in range(1, 9)))


def standard_states(name: str) -> PureState:
    """Named fixture states, e.g. ``"W"``, ``"GHZ"``, ``"psi3"``."""
    if name == "W":
        return eigenstate(7)
    if name == "GHZ":
        return PureState(np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2))
    if name == "product000":
        return PureState.basis("000")
    if name == "product111":
        return PureState.basis("111")
    if name == "zero_bell":
        # |0> (x) (|00> + |11>)/sqrt(2)
        return PureState(np.array([1, 0, 0, 1, 0, 0, 0, 0]) / np.sqrt(2))
    if name.startswith("psi") and name[3:].isdigit() and 1 <= int(name[3:]) <= 8:
        return eigenstate(int(name[3:]))
    raise ValueError(f"name: unknown state {name!r}; expected one of {STANDARD_NAMES}")
