"""Uncertainty-relation terms for the three XXZ pair Hamiltonians.

For a state and anisotropy ``gamma`` this module evaluates the pairwise bound
terms ``S_k``, the numerator ``N = 2 sum (dH)^2`` and denominator
``D = S_1 + S_2 + S_3``, the closed-form coefficients (m, A, B, C, f/g/h,
u_1..u_3), and the additive and multiplicative ratios.

Two flavours of ``S_k`` are computed side by side:

``paper_split``
    ``|<chirality>| + (gamma - 1) |<correction>|`` with the two expectations
    taken in separate absolute values and the prefactor kept signed.
``robertson``
    ``|<[H_ij, H_jk]>|`` of the raw commutator.

They coincide at ``gamma = 1``. Only the Robertson flavour equals
``(|A| + |B| + |C|) / 4`` for every state, and it is the default.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from . import spectra
from .statevec import (PAIRS, Operator, PureState, commutator, embed_spin,
                       expectation, pair_hamiltonian)

D_EPSILON = 1e-9
TAU_MAX = 2.0 / np.sqrt(3.0)
VARIANTS = ("paper_split", "robertson")
DEFAULT_VARIANT = "robertson"
U_FLOOR = 1e-12


def _spin_product(axes: str) -> Operator:
    """``s_{1,axes[0]} s_{2,axes[1]} s_{3,axes[2]}``."""
    a, b, c = axes
    return embed_spin(1, a) @ embed_spin(2, b) @ embed_spin(3, c)


@lru_cache(maxsize=None)
def chirality(i: int, j: int, k: int) -> Operator:
    """Triple product ``s_i . (s_j x s_k)``."""
    si = {ax: embed_spin(i, ax) for ax in "xyz"}
    sj = {ax: embed_spin(j, ax) for ax in "xyz"}
    sk = {ax: embed_spin(k, ax) for ax in "xyz"}
    cross = {
        "x": sj["y"] @ sk["z"] - sj["z"] @ sk["y"],
        "y": sj["z"] @ sk["x"] - sj["x"] @ sk["z"],
        "z": sj["x"] @ sk["y"] - sj["y"] @ sk["x"],
    }
    return si["x"] @ cross["x"] + si["y"] @ cross["y"] + si["z"] @ cross["z"]


# signed s1 s2 s3 strings multiplying (gamma - 1) in each commutator
_CORRECTION_TERMS = {
    1: ((+1, "xyz"), (-1, "yxz"), (-1, "zyx"), (+1, "zxy")),
    2: ((+1, "zxy"), (-1, "zyx"), (-1, "xzy"), (+1, "yzx")),
    3: ((+1, "yzx"), (-1, "xzy"), (-1, "yxz"), (+1, "xyz")),
}

_CHIRAL_ORDER = {1: (1, 2, 3), 2: (2, 3, 1), 3: (3, 1, 2)}


@lru_cache(maxsize=None)
def anisotropy_correction(k: int) -> Operator:
    """Operator multiplying ``(gamma - 1)`` in the k-th commutator."""
    terms = _CORRECTION_TERMS[k]
    out = _spin_product(terms[0][1]) * terms[0][0]
    for sign, axes in terms[1:]:
        out = out + _spin_product(axes) * sign
    return out


def commutator_closed_form(k: int, gamma: float) -> Operator:
    """``-i [chirality + (gamma - 1) correction]`` for the k-th commutator.

    k = 1, 2, 3 stand for [H12, H23], [H23, H31], [H31, H12].
    """
    return (chirality(*_CHIRAL_ORDER[k]) + anisotropy_correction(k) * (gamma - 1.0)) * -1j


class _GammaOperators(NamedTuple):
    hams: tuple[Operator, Operator, Operator]
    commutators: tuple[Operator, Operator, Operator]
    stack: np.ndarray  # H (3), H^2 (3), commutator (3), chirality (3), correction (3)


@lru_cache(maxsize=256)
def gamma_operators(gamma: float) -> _GammaOperators:
    hams = tuple(pair_hamiltonian(p, gamma) for p in PAIRS)
    comms = tuple(commutator(hams[k], hams[(k + 1) % 3]) for k in range(3))
    mats = ([h.matrix for h in hams] + [h.matrix @ h.matrix for h in hams]
            + [c.matrix for c in comms]
            + [chirality(*_CHIRAL_ORDER[k]).matrix for k in (1, 2, 3)]
            + [anisotropy_correction(k).matrix for k in (1, 2, 3)])
    stack = np.stack(mats)
    stack.setflags(write=False)
    return _GammaOperators(hams, comms, stack)


def _expectations(amps: np.ndarray, gamma: float) -> np.ndarray:
    applied = gamma_operators(float(gamma)).stack @ amps
    return applied @ amps.conj()


@dataclass(frozen=True)
class BoundTerms:
    s1: float
    s2: float
    s3: float
    s1_rob: float
    s2_rob: float
    s3_rob: float
    variant_used: str = DEFAULT_VARIANT

    @property
    def split(self) -> tuple[float, float, float]:
        return (self.s1, self.s2, self.s3)

    @property
    def robertson(self) -> tuple[float, float, float]:
        return (self.s1_rob, self.s2_rob, self.s3_rob)

    @property
    def selected(self) -> tuple[float, float, float]:
        return self.robertson if self.variant_used == "robertson" else self.split


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant: must be one of {VARIANTS}, got {variant!r}")


def _bound_terms_from(ev: np.ndarray, gamma: float, variant: str) -> BoundTerms:
    rob = np.abs(ev[6:9])
    split = np.abs(ev[9:12].real) + (gamma - 1.0) * np.abs(ev[12:15].real)
    return BoundTerms(*map(float, split), *map(float, rob), variant_used=variant)


def bound_terms(state: PureState, gamma: float,
                variant: str = DEFAULT_VARIANT) -> BoundTerms:
    """Both flavours of S_1, S_2, S_3 (hbar = 1)."""
    _check_variant(variant)
    return _bound_terms_from(_expectations(state.amps, gamma), gamma, variant)


@dataclass(frozen=True)
class CoefficientSet:
    m: complex
    a: complex
    b: complex
    c: complex
    f1: float
    f2: float
    g1: float
    g2: float
    h1: float
    h2: float
    u1: Optional[float]
    u2: Optional[float]
    u3: Optional[float]

    @property
    def f_sum(self) -> float:
        return self.f1 + self.g1 + self.h1

    @property
    def g_sum(self) -> float:
        return self.f2 + self.g2 + self.h2


def coefficient_set(state: PureState, gamma: float) -> CoefficientSet:
    """Closed-form coefficients written in terms of c1..c8."""
    # pad so that c[k] is the c_k of the closed forms
    c = np.concatenate(([0j], state.paper))
    cc = c.conj()
    g1m = gamma - 1.0

    m = ((cc[4] - cc[3]) * c[2] + (cc[2] - cc[4]) * c[3] + (cc[3] - cc[2]) * c[4]
         + (cc[6] - cc[7]) * c[5] + (cc[7] - cc[5]) * c[6] + (cc[5] - cc[6]) * c[7])
    a = 1j * m + 1j * g1m * ((cc[2] - cc[4]) * c[3] - cc[3] * c[2] + cc[3] * c[4]
                             + (cc[7] - cc[5]) * c[6] - cc[6] * c[7] + cc[6] * c[5])
    b = 1j * m + 1j * g1m * ((cc[4] - cc[3]) * c[2] - cc[2] * c[4] + cc[2] * c[3]
                             + (cc[5] - cc[6]) * c[7] - cc[7] * c[5] + cc[7] * c[6])
    cterm = 1j * m + 1j * g1m * ((cc[3] - cc[2]) * c[4] - cc[4] * c[3] + cc[4] * c[2]
                                 + (cc[6] - cc[7]) * c[5] - cc[5] * c[6] + cc[5] * c[7])

    def sq(z: complex) -> float:
        return float(abs(z) ** 2)

    f1 = sq(c[4] - c[3]) + sq(c[5] - c[6])
    f2 = sq(c[4] + c[3]) + sq(c[5] + c[6])
    g1 = sq(c[4] - c[2]) + sq(c[5] - c[7])
    g2 = sq(c[4] + c[2]) + sq(c[5] + c[7])
    h1 = sq(c[3] - c[2]) + sq(c[6] - c[7])
    h2 = sq(c[3] + c[2]) + sq(c[6] + c[7])

    dec = spectra.decompose(state)
    total = dec.excited_weight
    if total < U_FLOOR:
        u1 = u2 = u3 = None
    else:
        u1 = (dec.p(3) + dec.p(4)) / total
        u2 = (dec.p(1) + dec.p(2)) / total
        u3 = (dec.p(6) + dec.p(7)) / total
    return CoefficientSet(complex(m), complex(a), complex(b), complex(cterm),
                          f1, f2, g1, g2, h1, h2, u1, u2, u3)


def numerator_formula(coeffs: CoefficientSet, gamma: float) -> float:
    """N from f/g/h with hbar = 1; equals 2 sum (dH)^2."""
    gp, gm = gamma + 1.0, gamma - 1.0
    co = coeffs
    inner = (2 * gp ** 2 * co.f_sum + 2 * gm ** 2 * co.g_sum
             - (gp * co.g1 + gm * co.g2) ** 2
             - (gp * co.f1 + gm * co.f2) ** 2
             - (gp * co.h1 + gm * co.h2) ** 2)
    return 2 * (0.5 ** 4) * inner


def denominator_formula(coeffs: CoefficientSet) -> float:
    """``(|A| + |B| + |C|) / 4`` with hbar = 1."""
    return (abs(coeffs.a) + abs(coeffs.b) + abs(coeffs.c)) / 4.0


@dataclass(frozen=True)
class UncertaintyReport:
    gamma: float
    dh12: float
    dh23: float
    dh31: float
    bound_terms: BoundTerms
    big_n: float
    big_d: float
    additive_ratio: Optional[float]
    multiplicative_ratio: Optional[float]
    d_epsilon: float
    variant: str
    # pair indices k for which dH_ij dH_jk < S_k / 2 with the paper-split S_k
    split_violations: tuple[int, ...] = ()

    @property
    def variances(self) -> tuple[float, float, float]:
        return (self.dh12 ** 2, self.dh23 ** 2, self.dh31 ** 2)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["split_violations"] = list(self.split_violations)
        return out


def _report_from(ev: np.ndarray, gamma: float, variant: str,
                 d_epsilon: float) -> UncertaintyReport:
    means = ev[0:3].real
    variances = np.maximum(ev[3:6].real - means ** 2, 0.0)
    dh = np.sqrt(variances)
    terms = _bound_terms_from(ev, gamma, variant)
    s = np.array(terms.selected)
    big_n = float(2.0 * variances.sum())
    big_d = float(s.sum())
    additive = big_n / big_d if big_d > d_epsilon else None
    prod_s = float(np.prod(s))
    multiplicative = (float(np.cbrt(8.0 * np.prod(variances) / prod_s))
                      if prod_s > d_epsilon else None)
    products = (dh[0] * dh[1], dh[1] * dh[2], dh[2] * dh[0])
    violations = tuple(k + 1 for k in range(3)
                       if products[k] < 0.5 * terms.split[k] - 1e-12)
    return UncertaintyReport(float(gamma), float(dh[0]), float(dh[1]), float(dh[2]),
                             terms, big_n, big_d, additive, multiplicative,
                             d_epsilon, variant, violations)


def report(state: PureState, gamma: float, variant: str = DEFAULT_VARIANT,
           d_epsilon: float = D_EPSILON) -> UncertaintyReport:
    """Standard deviations, bound terms, N, D and both ratios at ``gamma``.

    A ratio is ``None`` when its denominator (D for the additive ratio,
    S_1 S_2 S_3 for the multiplicative one) does not exceed ``d_epsilon``.
    """
    _check_variant(variant)
    return _report_from(_expectations(state.amps, gamma), gamma, variant, d_epsilon)


def additive_ratio_value(amps: np.ndarray, gamma: float,
                         variant: str = DEFAULT_VARIANT,
                         d_epsilon: float = D_EPSILON) -> Optional[float]:
    """Fast path for optimizers: N / D of a unit vector, or None if trivial."""
    ev = _expectations(amps, gamma)
    means = ev[0:3].real
    big_n = 2.0 * np.maximum(ev[3:6].real - means ** 2, 0.0).sum()
    if variant == "robertson":
        big_d = np.abs(ev[6:9]).sum()
    else:
        big_d = (np.abs(ev[9:12].real) + (gamma - 1.0) * np.abs(ev[12:15].real)).sum()
    return float(big_n / big_d) if big_d > d_epsilon else None


TAU_BRANCHES = ("minus", "plus")


def tau_bound_function(u3: float, branch: str) -> float:
    """``(-/+ u3 + sqrt(1 + 2 u3 - 2 u3^2)) / (1 - u3)`` on ``0 <= u3 < 1``."""
    if branch not in TAU_BRANCHES:
        raise ValueError(f"branch: must be one of {TAU_BRANCHES}, got {branch!r}")
    if not 0.0 <= u3 < 1.0:
        raise ValueError(f"u3: must lie in [0, 1), got {u3!r}")
    sign = -1.0 if branch == "minus" else 1.0
    return (sign * u3 + np.sqrt(1.0 + 2.0 * u3 - 2.0 * u3 * u3)) / (1.0 - u3)


def tau_branch(gamma: float) -> str:
    """Branch picked by dividing the reduced numerator by |2 gamma + 1|."""
    return "plus" if 2.0 * gamma + 1.0 > 0 else "minus"
