"""Random-restart Nelder-Mead search over pure 3-qubit states.

The additive ratio N/D is bounded below by 2/sqrt(3) at gamma = 1 and -2;
``minimize_ratio`` probes that tightest constant. ``maximize_ratio`` searches
the other direction, where the ratio is unbounded as D -> 0, and reports the
counterexample it finds.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .statevec import PureState
from .uncertainty import (D_EPSILON, DEFAULT_VARIANT, TAU_MAX,
                          additive_ratio_value, report)

CLAIM_TOL = 1e-4
SENSES = ("min", "max")


class ClaimCheck(str, Enum):
    CONFIRMS_PAPER = "confirms_paper"
    EXCEEDS_PAPER = "exceeds_paper"
    BELOW_PAPER = "below_paper"


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_iters: int = 2000
    convergence_tol: float = 1e-10
    seed: int = 0
    gamma_grid: tuple[float, ...] = (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0)
    sense: str = "min"
    variant: str = DEFAULT_VARIANT
    d_epsilon: float = D_EPSILON

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts: must be >= 1, got {self.restarts!r}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters: must be >= 1, got {self.max_iters!r}")
        if not self.convergence_tol > 0:
            raise ValueError(f"convergence_tol: must be > 0, got {self.convergence_tol!r}")
        if self.sense not in SENSES:
            raise ValueError(f"sense: must be one of {SENSES}, got {self.sense!r}")


@dataclass(frozen=True)
class OptimizationResult:
    gamma: float
    sense: str
    best_ratio: float
    best_state: PureState
    restart_values: list[float]
    restart_converged: list[bool]
    claim_check: ClaimCheck

    @property
    def counterexample(self) -> Optional[PureState]:
        """The best state when it contradicts or overshoots 2/sqrt(3)."""
        return None if self.claim_check is ClaimCheck.CONFIRMS_PAPER else self.best_state

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "sense": self.sense,
            "best_ratio": self.best_ratio,
            "claim_check": self.claim_check.value,
            "best_state": [[float(a.real), float(a.imag)] for a in self.best_state.amps],
            # trivial endpoints are stored as +inf when minimizing
            "restart_values": [v if np.isfinite(v) else None for v in self.restart_values],
            "restart_converged": list(self.restart_converged),
        }


def claim_check(best_ratio: float, tol: float = CLAIM_TOL) -> ClaimCheck:
    if abs(best_ratio - TAU_MAX) <= tol:
        return ClaimCheck.CONFIRMS_PAPER
    if best_ratio > TAU_MAX:
        return ClaimCheck.EXCEEDS_PAPER
    return ClaimCheck.BELOW_PAPER


def _to_state(x: np.ndarray) -> Optional[PureState]:
    amps = x[:8] + 1j * x[8:]
    if not np.linalg.norm(amps) > 0:
        return None
    return PureState(amps, normalize=True).canonical()


def _start_vector(rng: np.random.Generator, start: Optional[PureState]) -> np.ndarray:
    if start is not None:
        return np.concatenate([start.amps.real, start.amps.imag])
    return rng.standard_normal(16)


def optimize_ratio(gamma: float, config: OptimizerConfig,
                   starts: Sequence[PureState] = ()) -> OptimizationResult:
    """Extremize the additive ratio at ``gamma`` in the direction ``config.sense``.

    Restart ``i`` draws its start from the i-th child of the master seed, or
    uses ``starts[i]`` when given. Trivial states (D <= d_epsilon) score 0
    when maximizing and +inf when minimizing.
    """
    sign = 1.0 if config.sense == "min" else -1.0
    trivial = np.inf if config.sense == "min" else 0.0

    def objective(x: np.ndarray) -> float:
        norm = np.linalg.norm(x)
        if not norm > 0:
            return sign * trivial
        u = x / norm
        value = additive_ratio_value(u[:8] + 1j * u[8:], gamma, config.variant,
                                     config.d_epsilon)
        return sign * (trivial if value is None else value)

    children = np.random.SeedSequence(config.seed).spawn(config.restarts)
    values: list[float] = []
    converged: list[bool] = []
    states: list[Optional[PureState]] = []
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        x0 = _start_vector(rng, starts[i] if i < len(starts) else None)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": config.max_iters,
                                "xatol": config.convergence_tol,
                                "fatol": config.convergence_tol,
                                "adaptive": True})
        state = _to_state(res.x)
        value = None
        if state is not None:
            value = report(state, gamma, variant=config.variant,
                           d_epsilon=config.d_epsilon).additive_ratio
        values.append(trivial if value is None else value)
        converged.append(bool(res.success))
        states.append(state)

    pick = int(np.argmin(values) if config.sense == "min" else np.argmax(values))
    best_state = states[pick]
    if best_state is None:
        best_state = PureState.basis("000")
    best = values[pick]
    return OptimizationResult(float(gamma), config.sense, best, best_state,
                              values, converged, claim_check(best))


def maximize_ratio(gamma: float, config: OptimizerConfig,
                   starts: Sequence[PureState] = ()) -> OptimizationResult:
    return optimize_ratio(gamma, dataclasses.replace(config, sense="max"), starts)


def minimize_ratio(gamma: float, config: OptimizerConfig,
                   starts: Sequence[PureState] = ()) -> OptimizationResult:
    return optimize_ratio(gamma, dataclasses.replace(config, sense="min"), starts)


def gamma_scan(config: OptimizerConfig) -> list[OptimizationResult]:
    """One optimization per entry of ``config.gamma_grid``."""
    if len(config.gamma_grid) == 0:
        raise ValueError("gamma_grid: must be nonempty")
    return [optimize_ratio(g, config) for g in config.gamma_grid]
