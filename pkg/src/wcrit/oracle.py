"""Numeric cross-checks of the closed-form coefficients against operator algebra."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectra import block_operator
from .statevec import expectation, haar_state
from .uncertainty import (bound_terms, coefficient_set, denominator_formula,
                          numerator_formula, report)

ORACLE_TOL = 1e-9
IDENTITIES = ("n_identity", "d_identity", "abc_identity", "f_identity", "g_identity")


@dataclass
class OracleSummary:
    samples: int
    seed: int
    tolerance: float
    max_residuals: dict[str, float] = field(default_factory=dict)
    # informational, not part of PASS/FAIL
    paper_split_d_residual: float = 0.0
    paper_split_violations: int = 0
    robertson_violations: int = 0

    @property
    def passed(self) -> bool:
        return (all(r < self.tolerance for r in self.max_residuals.values())
                and self.robertson_violations == 0)

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_residuals": dict(self.max_residuals),
            "passed": {k: v < self.tolerance for k, v in self.max_residuals.items()},
            "paper_split_d_residual": self.paper_split_d_residual,
            "paper_split_violations": self.paper_split_violations,
            "robertson_violations": self.robertson_violations,
            "status": "PASS" if self.passed else "FAIL",
        }


def oracle_check(samples: int, seed: int = 0,
                 tolerance: float = ORACLE_TOL) -> OracleSummary:
    """Draw Haar states with gamma ~ U[-3, 3] and record the worst residuals."""
    if samples < 1:
        raise ValueError(f"samples: must be >= 1, got {samples!r}")
    rng = np.random.default_rng(seed)
    p_op, f_op, g_op = (block_operator(k) for k in "PFG")
    worst = dict.fromkeys(IDENTITIES, 0.0)
    summary = OracleSummary(samples, seed, tolerance)
    for _ in range(samples):
        state = haar_state(rng)
        gamma = float(rng.uniform(-3.0, 3.0))
        rep = report(state, gamma)
        co = coefficient_set(state, gamma)
        terms = bound_terms(state, gamma)
        residuals = {
            "n_identity": abs(numerator_formula(co, gamma) - rep.big_n),
            "d_identity": abs(sum(terms.robertson) - denominator_formula(co)),
            "abc_identity": abs(co.a + co.b + co.c
                                - (2 * gamma + 1) * expectation(p_op, state)),
            "f_identity": abs(expectation(f_op, state) - co.f_sum),
            "g_identity": abs(expectation(g_op, state) - co.g_sum),
        }
        for key, value in residuals.items():
            worst[key] = max(worst[key], float(value))
        summary.paper_split_d_residual = max(
            summary.paper_split_d_residual,
            abs(sum(terms.split) - denominator_formula(co)))
        summary.paper_split_violations += bool(rep.split_violations)
        dh = (rep.dh12, rep.dh23, rep.dh31)
        for k in range(3):
            if dh[k] * dh[(k + 1) % 3] < 0.5 * terms.robertson[k] - 1e-10:
                summary.robertson_violations += 1
    summary.max_residuals = worst
    return summary
