"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Lines are printed as each criterion finishes (visible with ``-s``) and
repeated in the terminal summary.
"""

import time

import numpy as np
import pytest

from wcrit import spectra
from wcrit.classifier import Label, classify
from wcrit.optimizer import (ClaimCheck, OptimizerConfig, maximize_ratio,
                             minimize_ratio)
from wcrit.oracle import oracle_check
from wcrit.serialization import read_state, write_state
from wcrit.statevec import PAIRS, commutator, expectation, haar_state, pair_hamiltonian, std_dev
from wcrit.uncertainty import TAU_BRANCHES, TAU_MAX, report, tau_bound_function
from wcrit.wfamily import (FAMILIES, CriticalParams, critical_state,
                           standard_states, verify_w_equivalence)

from conftest import record_criterion

GRID_P = np.linspace(0.0, 1.0, 20)
GRID_PHI = np.linspace(0.0, 2 * np.pi, 20, endpoint=False)
GAMMAS = (1.0, -2.0)


def _grid():
    return [CriticalParams(f, float(p), float(phi))
            for f in FAMILIES for p in GRID_P for phi in GRID_PHI]


def _check(number, ok, detail):
    record_criterion(number, ok, detail)
    assert ok, detail


def test_criterion_1_spectra():
    expected = {
        "P": [-np.sqrt(3)] * 2 + [0.0] * 4 + [np.sqrt(3)] * 2,
        "F": [0.0] * 4 + [3.0] * 4,
        "G": [0.0] * 2 + [1.0] * 4 + [4.0] * 2,
    }
    t0 = time.perf_counter()
    worst = 0.0
    for kind in spectra.KINDS:
        matrix = spectra.build_block_matrix(kind).entries
        worst = max(worst, float(np.max(np.abs(np.linalg.eigvalsh(matrix) - expected[kind]))))
    elapsed = time.perf_counter() - t0
    _check(1, worst <= 1e-12 and elapsed < 1.0,
           f"max eigenvalue error {worst:.2e} (tol 1e-12), {elapsed:.3f} s (limit 1 s)")


def test_criterion_2_eigenstates():
    basis = spectra.eigenbasis()
    ortho = float(np.max(np.abs(basis.conj().T @ basis - np.eye(8))))
    relation = 0.0
    for kind in spectra.KINDS:
        op = spectra.block_operator(kind).matrix
        for i in range(1, 9):
            v = spectra.eigenstate(i).amps
            lam = spectra.EIGENVALUES[kind][i - 1]
            relation = max(relation, float(np.max(np.abs(op @ v - lam * v))))
    _check(2, ortho <= 1e-12 and relation <= 1e-12,
           f"orthonormality {ortho:.2e}, eigen-relation {relation:.2e} (tol 1e-12)")


def test_criterion_3_family_saturation():
    t0 = time.perf_counter()
    worst, missing = 0.0, 0
    for params in _grid():
        state = critical_state(params)
        for gamma in GAMMAS:
            rep = report(state, gamma)
            for value in (rep.additive_ratio, rep.multiplicative_ratio):
                if value is None:
                    missing += 1
                else:
                    worst = max(worst, abs(value - TAU_MAX))
    elapsed = time.perf_counter() - t0
    _check(3, missing == 0 and worst <= 1e-8 and elapsed < 5.0,
           f"800 states x 2 gammas: max |ratio - 2/sqrt(3)| {worst:.2e} (tol 1e-8), "
           f"{missing} undefined, {elapsed:.2f} s (limit 5 s)")


def test_criterion_4_w_equivalence():
    worst = max(abs(verify_w_equivalence(params) - 1.0) for params in _grid())
    _check(4, worst <= 1e-10, f"max |fidelity - 1| {worst:.2e} (tol 1e-10)")


def test_criterion_5_oracle_identities():
    summary = oracle_check(1000, seed=5)
    worst = max(summary.max_residuals.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in summary.max_residuals.items())
    _check(5, all(v < 1e-9 for v in summary.max_residuals.values()),
           f"1000 Haar states: {detail} (tol 1e-9, worst {worst:.1e})")


def test_criterion_6_robertson():
    rng = np.random.default_rng(6)
    violations, slack = 0, np.inf
    for _ in range(10_000):
        state = haar_state(rng)
        gamma = float(rng.uniform(-3.0, 3.0))
        hs = [pair_hamiltonian(pair, gamma) for pair in PAIRS]
        for k in range(3):
            a, b = hs[k], hs[(k + 1) % 3]
            lhs = std_dev(a, state) * std_dev(b, state)
            rhs = 0.5 * abs(expectation(commutator(a, b), state))
            slack = min(slack, lhs - rhs)
            violations += lhs < rhs - 1e-10
    _check(6, violations == 0,
           f"10^4 draws x 3 pairs: {violations} violations, min slack {slack:.2e}")


def test_criterion_7_optimizer(tmp_path):
    config = OptimizerConfig(restarts=64, seed=7)
    t0 = time.perf_counter()
    parts, ok = [], True
    for gamma in GAMMAS:
        res = maximize_ratio(gamma, config)
        status = res.claim_check
        if status is ClaimCheck.EXCEEDS_PAPER:
            path = tmp_path / f"counterexample_gamma{gamma:+g}.json"
            write_state(res.counterexample, path)
            back = report(read_state(path), gamma).additive_ratio
            persisted = back is not None and back > TAU_MAX + 1e-4
            ok &= persisted
            parts.append(f"max gamma={gamma:+g}: {status.value} best {res.best_ratio:.4g}"
                         f" (counterexample persisted, reread ratio {back:.4g})")
        else:
            ok &= status is ClaimCheck.CONFIRMS_PAPER
            parts.append(f"max gamma={gamma:+g}: {status.value} best {res.best_ratio:.10f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    _check(7, ok, "; ".join(parts) + f"; {elapsed:.1f} s (limit 60 s)")


def test_criterion_7_minimum_probe():
    # the tightest-constant direction, reported alongside criterion 7
    config = OptimizerConfig(restarts=64, seed=7)
    t0 = time.perf_counter()
    results = [minimize_ratio(g, config) for g in GAMMAS]
    elapsed = time.perf_counter() - t0
    ok = all(r.claim_check is ClaimCheck.CONFIRMS_PAPER for r in results) and elapsed < 60
    detail = "; ".join(f"min gamma={r.gamma:+g}: {r.claim_check.value} best "
                       f"{r.best_ratio:.10f}" for r in results)
    _check("7b", ok, detail + f"; {elapsed:.1f} s (limit 60 s)")


def test_criterion_8_discrimination():
    negatives = ["GHZ", "product000", "product111", "zero_bell",
                 "psi5", "psi6", "psi7", "psi8"]
    wrong = [n for n in negatives if classify(standard_states(n)).label is Label.W_CLASS]
    worst, misclassified = 0.0, 0
    for params in _grid():
        verdict = classify(critical_state(params))
        if verdict.label is not Label.W_CLASS:
            misclassified += 1
            continue
        got = verdict.reconstructed_params
        err = abs(got.p - params.p) if got.family == params.family else np.inf
        if 0.0 < params.p < 1.0:
            dphi = np.mod(got.phi - params.phi + np.pi, 2 * np.pi) - np.pi
            err = max(err, abs(dphi))
        worst = max(worst, err)
    _check(8, not wrong and misclassified == 0 and worst < 1e-6,
           f"negatives flagged w_class: {wrong or 'none'}; family misclassified "
           f"{misclassified}/800; max reconstruction error {worst:.2e} (tol 1e-6)")


def test_criterion_9_tau_function():
    grid = np.linspace(0.0, 0.999, 1000)
    parts, ok = [], True
    for branch in TAU_BRANCHES:
        values = np.array([tau_bound_function(u, branch) for u in grid])
        at_zero = abs(values[0] - 1.0)
        drops = int(np.sum(np.diff(values) < 0))
        ok &= at_zero <= 1e-15 and drops == 0
        parts.append(f"{branch}: |T(0) - 1| {at_zero:.1e}, {drops} decreasing steps")
    _check(9, ok, "; ".join(parts))
