import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ptfloquet.core import floquet
from ptfloquet.core.analysis import match_spectra
from ptfloquet.core.bloch import h_pt_k, propagator_k, r_of_k
from ptfloquet.core.errors import PTFloquetError
from ptfloquet.core.lattice import PAULI_X, PAULI_Y, PAULI_Z, build_pt_ssh
from ptfloquet.core.linalg import eig_dense, expm
from ptfloquet.core.validation import quasienergy_deviation
from ptfloquet.models.model import BlochParams, LatticeConfig

UNBROKEN = BlochParams(v=0.25, w=0.75, gamma=0.2, k=0.7)


def test_monodromy_of_identical_steps():
    h = 0.4 * PAULI_X + 0.1j * PAULI_Z
    assert_allclose(floquet.monodromy(h, h, 2.0), expm(-2j * h), atol=1e-13)


def test_monodromy_rejects_bad_input():
    with pytest.raises(ValueError):
        floquet.monodromy(PAULI_X, PAULI_X, 0.0)
    with pytest.raises(ValueError):
        floquet.monodromy(PAULI_X, np.eye(3), 1.0)


def test_reversed_step_order_is_similar():
    config = LatticeConfig.from_ratio(0.3, 0.2, 6)
    h1, h2 = build_pt_ssh(config, 1), build_pt_ssh(config, -1)
    forward = eig_dense(floquet.monodromy(h1, h2, 2.0)).eigenvalues
    backward = eig_dense(floquet.monodromy(h1, h2, 2.0, reverse=True)).eigenvalues
    assert match_spectra(forward, backward) < 1e-10


def test_hermitian_limit_quasienergy():
    curly_e, x = floquet.quasienergy_analytic(0.3, 0.0, 2.0)
    assert curly_e == pytest.approx(0.3, abs=1e-12)
    assert x == pytest.approx(math.sin(0.3 * math.pi / 2))


def test_broken_quasienergy_sits_on_zone_edge():
    r, gamma, omega = 0.5, 1.0, 1.0
    curly_e, x = floquet.quasienergy_analytic(r, gamma, omega)
    assert abs(x) > 1
    assert curly_e.real == pytest.approx(omega / 2)
    assert curly_e.imag > 0
    h_plus = r * PAULI_X + 1j * gamma * PAULI_Z
    h_minus = r * PAULI_X - 1j * gamma * PAULI_Z
    period = 2 * math.pi / omega
    numeric, decomposition = floquet.quasienergies(floquet.monodromy(h_plus, h_minus, period), period)
    assert quasienergy_deviation(curly_e, numeric, decomposition.eigenvalues, omega) < 1e-8


def test_closed_form_monodromy_matches_product():
    for omega in (0.5, 1.3, 4.0):
        tau = math.pi / omega
        minus = BlochParams(v=UNBROKEN.v, w=UNBROKEN.w, gamma=-UNBROKEN.gamma, k=UNBROKEN.k)
        product = propagator_k(minus, tau) @ propagator_k(UNBROKEN, tau)
        assert_allclose(floquet.monodromy_k_analytic(UNBROKEN, omega), product, atol=1e-12)


@pytest.mark.parametrize("omega", [0.9, 1.3, 2.5])
def test_effective_hamiltonian_generates_monodromy(omega):
    r = r_of_k(UNBROKEN)
    analytic = floquet.hf_analytic(r, UNBROKEN.gamma, omega)
    period = 2 * math.pi / omega
    assert_allclose(expm(-1j * period * analytic.matrix), floquet.monodromy_k_analytic(UNBROKEN, omega), atol=1e-10)


def test_symmetry_dichotomy():
    unbroken = floquet.hf_analytic(0.3, 0.1, 2.0)
    assert not unbroken.broken
    flags = floquet.classify_symmetries(unbroken.matrix)
    assert (flags.sublattice, flags.pseudo_hermitian, flags.chiral) == (True, True, True)

    broken = floquet.hf_analytic(0.5, 1.0, 1.0)
    assert broken.broken
    flags = floquet.classify_symmetries(broken.matrix)
    assert (flags.sublattice, flags.pseudo_hermitian, flags.chiral) == (True, False, False)


def test_shifted_hamiltonian_is_pseudo_hermitian():
    shifted = floquet.hf_shifted(0.5, 1.0, 1.0)
    assert_allclose(PAULI_X @ shifted.matrix @ PAULI_X, shifted.matrix.conj().T, atol=1e-10)
    assert np.sort(np.linalg.eigvals(shifted.matrix).real) == pytest.approx([0.5, 0.5], abs=1e-9)


def test_exceptional_point_has_no_shifted_form():
    # r τ = π/2 at γ = 0 puts x exactly on 1
    with pytest.raises(PTFloquetError):
        floquet.hf_shifted(1.0, 0.0, 2.0)


def test_classify_symmetries_needs_2x2():
    with pytest.raises(ValueError):
        floquet.classify_symmetries(np.eye(3))


def test_bulk_quasienergy_bands_are_folded():
    omega = 0.7
    bands = floquet.bulk_quasienergy_bands(0.25, 0.75, 0.2, omega, np.linspace(-math.pi, math.pi, 21, endpoint=False))
    assert bands.shape == (21, 2)
    assert np.all(bands.real >= -omega / 2) and np.all(bands.real < omega / 2)


def test_h_pt_k_eigenvalues():
    values = np.linalg.eigvals(h_pt_k(UNBROKEN))
    r = r_of_k(UNBROKEN)
    assert sorted(values.real) == pytest.approx([-math.sqrt(r * r - 0.04), math.sqrt(r * r - 0.04)])


@pytest.mark.parametrize("omega, x", [(2.0, 1.005), (3.0, 0.868)])
def test_quasienergy_reference_points(omega, x):
    curly_e, fold = floquet.quasienergy_analytic(1.0, 0.1, omega)
    assert fold == pytest.approx(x, abs=1e-3)
    if fold > 1:
        assert curly_e.real == omega / 2
        assert curly_e.imag == pytest.approx(0.0637, abs=2e-4)
    else:
        assert curly_e.imag == 0.0
        assert 0 < curly_e.real < omega / 2


@pytest.mark.parametrize("omega", [2.0, 3.0, 0.9])
def test_shifted_hamiltonian_trace_is_omega(omega):
    shifted = floquet.hf_shifted(1.0, 0.1, omega)
    assert np.trace(shifted.matrix) == pytest.approx(omega, abs=1e-10)


def test_high_frequency_limit_is_the_average_hamiltonian():
    # the ±iγσ_z steps cancel to first order, leaving r σ_x
    analytic = floquet.hf_analytic(1.0, 0.1, 200.0)
    assert_allclose(analytic.matrix, PAULI_X, atol=5e-3)
    assert analytic.curly_e.imag == 0.0


def test_sigma_z_is_chiral_only():
    # σ_y σ_z σ_y = -σ_z = -σ_z^†, but neither σ_z nor σ_x anticommutes or intertwines it
    flags = floquet.classify_symmetries(PAULI_Z)
    assert flags.chiral
    assert not flags.sublattice
    assert not flags.pseudo_hermitian
    assert not floquet.classify_symmetries(PAULI_Y).pseudo_hermitian
