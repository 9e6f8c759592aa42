import numpy as np
import pytest
from numpy.testing import assert_allclose

from ptfloquet.core.errors import DefectiveMonodromy, OverflowRisk
from ptfloquet.core.analysis import match_spectra
from ptfloquet.core.floquet import monodromy, quasienergy_analytic
from ptfloquet.core.lattice import IDENTITY, PAULI_X, PAULI_Z, build_two_site
from ptfloquet.core.linalg import eig_dense, expm, floquet_log, fold_quasienergy, log_eigenvalues


def test_eigenvalues_sorted_by_real_then_imaginary_part():
    decomposition = eig_dense(np.diag([1 + 1j, -2.0, 1 - 1j]))
    assert_allclose(decomposition.eigenvalues, [-2.0, 1 - 1j, 1 + 1j])
    assert not decomposition.condition_flag


def test_eigenvectors_have_unit_norm_and_real_positive_pivot():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    decomposition = eig_dense(a)
    vectors = decomposition.right_eigenvectors
    assert_allclose(np.linalg.norm(vectors, axis=0), 1.0, atol=1e-12)
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(6)]
    assert_allclose(pivots.imag, 0.0, atol=1e-14)
    assert np.all(pivots.real > 0)
    assert_allclose(a @ vectors, vectors * decomposition.eigenvalues, atol=1e-10)


def test_jordan_block_is_flagged():
    decomposition = eig_dense([[1.0, 1.0], [0.0, 1.0]])
    assert decomposition.condition_flag


def test_non_finite_matrix_is_rejected():
    with pytest.raises(ValueError):
        eig_dense([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        eig_dense(np.zeros((2, 3)))


def test_expm_matches_rotation():
    t = 0.7
    assert_allclose(expm(-1j * t * PAULI_X), np.cos(t) * IDENTITY - 1j * np.sin(t) * PAULI_X, atol=1e-14)
    assert_allclose(expm(np.zeros((3, 3))), np.eye(3))


def test_expm_refuses_huge_norms():
    with pytest.raises(OverflowRisk) as info:
        expm(700.0 * np.eye(2))
    assert info.value.norm == pytest.approx(700.0)


def test_fold_quasienergy_half_open_interval():
    omega = 2.0
    folded = fold_quasienergy([1.0, -1.0, 1.5, 0.25 + 0.5j, 4.0], omega)
    assert_allclose(folded, [-1.0, -1.0, -0.5, 0.25 + 0.5j, 0.0])
    assert np.all(folded.real >= -omega / 2) and np.all(folded.real < omega / 2)


def test_log_eigenvalues_rejects_singular_monodromy():
    with pytest.raises(ValueError):
        log_eigenvalues([1.0, 0.0], 1.0)


def test_floquet_log_recovers_small_hamiltonian():
    h = 0.3 * PAULI_X + 0.2 * PAULI_Z
    assert_allclose(floquet_log(expm(-1j * 1.0 * h), 1.0), h, atol=1e-12)


def test_floquet_log_defective_monodromy():
    with pytest.raises(DefectiveMonodromy):
        floquet_log([[1.0, 1.0], [0.0, 1.0]], 1.0)


def test_eigendecomposition_rebuilds_random_matrix():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    decomposition = eig_dense(a)
    vectors = decomposition.right_eigenvectors
    rebuilt = vectors @ np.diag(decomposition.eigenvalues) @ np.linalg.inv(vectors)
    assert_allclose(rebuilt, a, atol=1e-10)


def test_expm_inverse_and_determinant():
    rng = np.random.default_rng(11)
    a = 0.5 * (rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    assert_allclose(expm(a) @ expm(-a), np.eye(5), atol=1e-12)
    assert np.linalg.det(expm(a)) == pytest.approx(np.exp(np.trace(a)), rel=1e-12)


@pytest.mark.parametrize("omega", [2.0, 3.0])
def test_floquet_log_of_two_site_monodromy(omega):
    period = 2 * np.pi / omega
    g = monodromy(build_two_site(1.0, 0.1, 1), build_two_site(1.0, 0.1, -1), period)
    hf = floquet_log(g, period)
    curly_e, _ = quasienergy_analytic(1.0, 0.1, omega)
    assert match_spectra(np.linalg.eigvals(hf), [curly_e, -curly_e], omega=omega) < 1e-9
    assert_allclose(expm(-1j * period * hf), g, atol=1e-10)
