"""W-state criterion: saturation of both ratios at 2/sqrt(3) for gamma = 1 and -2."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import spectra
from .statevec import PureState
from .uncertainty import (D_EPSILON, DEFAULT_VARIANT, TAU_MAX,
                          UncertaintyReport, report)
from .wfamily import CriticalParams

CRITERION_GAMMAS = (1.0, -2.0)
DEFAULT_TOLERANCE = 1e-6


class Label(str, Enum):
    W_CLASS = "w_class"
    NOT_SATURATING = "not_saturating"
    BOUND_TRIVIAL = "bound_trivial"


@dataclass(frozen=True)
class Verdict:
    label: Label
    gamma_results: dict[float, UncertaintyReport]
    tolerance: float
    reconstructed_params: Optional[CriticalParams] = None

    def to_dict(self) -> dict:
        params = self.reconstructed_params
        return {
            "label": self.label.value,
            "tolerance": self.tolerance,
            "gamma_results": {repr(g): r.to_dict() for g, r in self.gamma_results.items()},
            "reconstructed_params": None if params is None else
            {"family": params.family, "p": params.p, "phi": params.phi},
        }


def _saturates(value: Optional[float], tolerance: float) -> bool:
    return value is not None and abs(value - TAU_MAX) <= tolerance * TAU_MAX


def reconstruct_params(state: PureState) -> CriticalParams:
    """Nearest (family, p, phi) from the (psi_1, psi_2) or (psi_3, psi_4) weights."""
    dec = spectra.decompose(state)
    w12 = dec.p(1) + dec.p(2)
    w34 = dec.p(3) + dec.p(4)
    family, (i, j), weight = (("c1", (1, 2), w12) if w12 >= w34
                              else ("c2", (3, 4), w34))
    p = min(max(dec.p(j) / weight, 0.0), 1.0) if weight > 0 else 0.0
    if dec.p(i) < spectra.POPULATION_FLOOR or dec.p(j) < spectra.POPULATION_FLOOR:
        phi = 0.0
    else:
        phi = float(np.mod(dec.phi(j) - dec.phi(i), 2 * np.pi))
        if phi >= 2 * np.pi:
            phi = 0.0
    return CriticalParams(family, p, phi)


def classify(state: PureState, tolerance: float = DEFAULT_TOLERANCE,
             variant: str = DEFAULT_VARIANT,
             d_epsilon: float = D_EPSILON) -> Verdict:
    """Apply the criterion at both anisotropies.

    ``tolerance`` is relative to 2/sqrt(3). ``w_class`` requires the additive
    and multiplicative ratios to saturate at gamma = 1 and at gamma = -2;
    ``bound_trivial`` means D <= d_epsilon at both.
    """
    results = {g: report(state, g, variant=variant, d_epsilon=d_epsilon)
               for g in CRITERION_GAMMAS}
    if all(r.big_d <= d_epsilon for r in results.values()):
        return Verdict(Label.BOUND_TRIVIAL, results, tolerance)
    saturated = all(_saturates(r.additive_ratio, tolerance)
                    and _saturates(r.multiplicative_ratio, tolerance)
                    for r in results.values())
    if not saturated:
        return Verdict(Label.NOT_SATURATING, results, tolerance)
    return Verdict(Label.W_CLASS, results, tolerance, reconstruct_params(state))


def _classify_item(item, tolerance, variant, d_epsilon):
    try:
        state = item if isinstance(item, PureState) else PureState(item)
        return classify(state, tolerance, variant=variant, d_epsilon=d_epsilon)
    except Exception as exc:  # surfaced in place, batch continues
        return exc


def scan(states: Iterable[Union[PureState, Sequence[complex]]],
         tolerance: float = DEFAULT_TOLERANCE, variant: str = DEFAULT_VARIANT,
         d_epsilon: float = D_EPSILON,
         max_workers: Optional[int] = None) -> list[Union[Verdict, Exception]]:
    """Classify a batch, preserving order.

    Items failing validation yield their exception in place of a verdict.
    """
    items = list(states)
    if max_workers is None or max_workers <= 1:
        return [_classify_item(s, tolerance, variant, d_epsilon) for s in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda s: _classify_item(s, tolerance, variant, d_epsilon),
                             items))
