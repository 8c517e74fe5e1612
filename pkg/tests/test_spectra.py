import numpy as np
import pytest
from hypothesis import given

from conftest import pure_states
from wcrit.spectra import (EIGENVALUES, SQRT3, block_operator, build_block_matrix,
                           decompose, eigen_solve, eigenbasis, eigenspace_projector,
                           eigenstate)
from wcrit.statevec import (Operator, PureState, commutator, expectation,
                            fidelity_up_to_phase, haar_state, pair_hamiltonian)

s3 = np.sqrt(3.0)


@pytest.mark.parametrize("kind, expected", [
    ("P", [-s3, -s3, 0, 0, 0, 0, s3, s3]),
    ("F", [0, 0, 0, 0, 3, 3, 3, 3]),
    ("G", [0, 0, 1, 1, 1, 1, 4, 4]),
])
def test_block_spectra(kind, expected):
    spec = eigen_solve(block_operator(kind))
    assert np.allclose(spec.eigenvalues, expected, atol=1e-12, rtol=0)
    assert spec.max_residual <= 1e-11


@pytest.mark.parametrize("kind", ["P", "F", "G"])
def test_block_structure(kind):
    bm = build_block_matrix(kind)
    m = bm.entries
    assert np.allclose(m, m.conj().T, atol=1e-12)
    # c1 and c8 rows/columns vanish
    for k in (0, 7):
        assert not m[k].any() and not m[:, k].any()


def test_p_block_entries():
    m = build_block_matrix("P").entries
    p = np.array([[0, 1j, -1j], [-1j, 0, 1j], [1j, -1j, 0]])
    assert np.array_equal(m[1:4, 1:4], p)
    assert np.array_equal(m[4:7, 4:7], p.T)


def test_f_is_p_squared_blockwise():
    p = build_block_matrix("P").entries
    f = build_block_matrix("F").entries
    assert np.allclose(f, p @ p, atol=1e-12)


def test_f_and_g_commute():
    c = commutator(block_operator("F"), block_operator("G"))
    assert np.max(np.abs(c.matrix)) <= 1e-12


def test_unknown_kind():
    with pytest.raises(ValueError):
        build_block_matrix("Q")


def test_eigenstates_orthonormal():
    b = eigenbasis()
    assert np.max(np.abs(b.conj().T @ b - np.eye(8))) <= 1e-12


@pytest.mark.parametrize("i", range(1, 9))
@pytest.mark.parametrize("kind", ["P", "F", "G"])
def test_simultaneous_eigenvectors(i, kind):
    psi = eigenstate(i)
    out = block_operator(kind) @ psi
    assert np.max(np.abs(out - EIGENVALUES[kind][i - 1] * psi.amps)) <= 1e-12


def test_named_eigenvalues():
    assert np.allclose(block_operator("P") @ eigenstate(1), -SQRT3 * eigenstate(1).amps, atol=1e-12)
    assert np.allclose(block_operator("G") @ eigenstate(6), 4 * eigenstate(6).amps, atol=1e-12)


def test_psi7_is_w_and_psi8_is_000():
    assert np.allclose(eigenstate(7).amps[[1, 2, 4]], 1 / s3)
    assert eigenstate(8).amps[0] == 1


def test_eigenstate_index_range():
    with pytest.raises(ValueError):
        eigenstate(9)


class TestDecompose:
    def test_zero_state(self):
        dec = decompose(PureState.basis("000"))
        assert dec.p(8) == pytest.approx(1.0)
        assert np.allclose(dec.populations[:7], 0)

    def test_w_state(self):
        assert decompose(eigenstate(7)).p(7) == pytest.approx(1.0, abs=1e-14)

    def test_reconstruction(self, haar_states):
        for s in haar_states:
            dec = decompose(s)
            assert dec.populations.sum() == pytest.approx(1.0, abs=1e-10)
            assert np.all((dec.phases >= 0) & (dec.phases < 2 * np.pi))
            assert fidelity_up_to_phase(dec.reconstruct(), s) >= 1 - 1e-10

    def test_first_populated_phase_zero(self, rng):
        s = haar_state(rng)
        assert decompose(s).phi(1) == 0.0

    def test_unpopulated_phase_zero(self):
        s = PureState((eigenstate(3).amps + 1j * eigenstate(5).amps) / np.sqrt(2))
        dec = decompose(s)
        assert dec.phi(3) == 0.0
        assert dec.phi(5) == pytest.approx(np.pi / 2, abs=1e-12)
        assert dec.phi(1) == 0.0 and dec.p(1) < 1e-14

    @given(pure_states())
    def test_p_expectation_reduction(self, s):
        dec = decompose(s)
        value = expectation(block_operator("P"), s)
        assert value.real == pytest.approx(
            SQRT3 * (-dec.p(1) - dec.p(2) + dec.p(3) + dec.p(4)), abs=1e-10)


class TestEigenSolve:
    def test_identity(self):
        assert np.allclose(eigen_solve(Operator(np.eye(8))).eigenvalues, 1)

    def test_diagonal(self):
        spec = eigen_solve(Operator(np.diag([0.0] * 7 + [5.0])))
        assert spec.degeneracies == ((0.0, 7), (5.0, 1))

    def test_pair_hamiltonian(self):
        spec = eigen_solve(pair_hamiltonian((1, 2), 1.0))
        assert [m for _, m in spec.degeneracies] == [2, 6]
        assert spec.degeneracies[0][0] == pytest.approx(-0.75, abs=1e-12)

    def test_rejects_nonhermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            eigen_solve(Operator(np.triu(np.ones((8, 8)))))

    @pytest.mark.parametrize("kind, value, members", [
        ("P", -SQRT3, (1, 2)), ("P", SQRT3, (3, 4)), ("G", 4.0, (6, 7)), ("F", 3.0, (1, 2, 3, 4)),
    ])
    def test_degenerate_projectors_match(self, kind, value, members):
        proj = eigenspace_projector(eigen_solve(block_operator(kind)), value)
        ref = sum(np.outer(eigenstate(i).amps, eigenstate(i).amps.conj()) for i in members)
        assert np.max(np.abs(proj - ref)) <= 1e-12
