import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from ptfloquet.core import lattice
from ptfloquet.models.model import DriveKind, DriveSpec, LatticeConfig, SiteIndex, Sublattice


def test_site_index_bijection():
    assert lattice.site_index(1, "A") == 0
    assert lattice.site_index(1, Sublattice.B) == 1
    assert lattice.site_index(20, "B") == 39
    assert lattice.site_label(39) == "20B"
    for flat in range(10):
        assert SiteIndex.from_flat(flat).flat == flat


def test_ssh_hoppings_alternate(topological):
    h = lattice.build_ssh(topological)
    assert h.shape == (40, 40)
    assert_allclose(h, h.conj().T)
    assert h[0, 1] == pytest.approx(0.25)
    assert h[1, 2] == pytest.approx(0.75)
    assert h[0, 39] == 0


def test_periodic_closing_bond(topological):
    h = lattice.build_ssh(topological, periodic=True)
    assert h[0, 39] == pytest.approx(0.75)
    assert h[39, 0] == pytest.approx(0.75)


def test_gain_on_a_loss_on_b():
    config = LatticeConfig.from_ratio(0.3, 0.25, 4)
    h = lattice.build_pt_ssh(config)
    assert h[0, 0] == pytest.approx(0.25j)
    assert h[1, 1] == pytest.approx(-0.25j)
    assert_allclose(lattice.build_pt_ssh(config, sign=-1), h.conj())


def test_pt_ssh_is_pt_symmetric():
    config = LatticeConfig.from_ratio(0.3, 0.25, 5)
    h = lattice.build_pt_ssh(config)
    parity = np.eye(config.sites)[::-1]
    assert_allclose(parity @ h.conj() @ parity, h)


def test_couplings_must_sum_to_unity():
    with pytest.raises(ValidationError):
        LatticeConfig(dimers=4, v=0.5, w=0.6)
    with pytest.raises(ValidationError):
        LatticeConfig(dimers=0, v=0.5, w=0.5)


def test_drive_hamiltonians():
    config = LatticeConfig.from_ratio(0.3, 0.2, 4)
    h1, h2 = lattice.drive_hamiltonians(DriveSpec(kind=DriveKind.PT_PT, omega=1.0), config)
    assert_allclose(h2, h1.conj())
    h1, h2 = lattice.drive_hamiltonians(DriveSpec(kind=DriveKind.PT_HERMITIAN, omega=1.0), config)
    assert_allclose(h2, h2.conj().T)
    assert h1[0, 0] == pytest.approx(0.2j)
    h1, h2 = lattice.drive_hamiltonians(DriveSpec(kind=DriveKind.TWO_SITE, omega=1.0), j=1.0, gamma=0.1)
    assert h1.shape == (2, 2)
    assert h1[0, 0] == pytest.approx(0.1j)
    assert h2[0, 0] == pytest.approx(-0.1j)


def test_lattice_drive_needs_config():
    with pytest.raises(ValueError):
        lattice.drive_hamiltonians(DriveSpec(kind=DriveKind.PT_PT, omega=1.0))


@pytest.mark.parametrize("v", [0.25, 0.5, 0.75])
def test_ssh_spectrum_comes_in_plus_minus_pairs(v):
    energies = np.linalg.eigvalsh(lattice.build_ssh(LatticeConfig.from_ratio(v, 0.0, 12)))
    assert_allclose(energies, -energies[::-1], atol=1e-12)


@pytest.mark.parametrize("v, gamma", [(0.25, 0.25), (0.75, 0.1), (0.6, 0.3)])
def test_pt_ssh_spectrum_is_closed_under_conjugation(v, gamma):
    energies = np.linalg.eigvals(lattice.build_pt_ssh(LatticeConfig.from_ratio(v, gamma, 12)))
    cost = np.abs(energies[:, None] - energies.conj()[None, :])
    assert cost.min(axis=1).max() < 1e-8
