import math

import numpy as np
import pytest

from giantbic.base_classes.system import Lattice, SystemParams
from giantbic.utils.model import band_edges, build_hamiltonian, coupling_amplitude, dispersion, resonant_momentum
from giantbic.utils.spectrum import diagonalize
from tests.conftest import CONFIG_A, CONFIG_B


def test_config_a_matrix():
    lattice = Lattice.centered(6, 401)
    hamiltonian = build_hamiltonian(CONFIG_A, lattice)
    leg0, legN = 1 + lattice.leg0_index, 1 + lattice.legN_index

    assert hamiltonian.dimension == 402
    assert hamiltonian.hermiticity_error() == 0.0
    assert hamiltonian.matrix[0, leg0] == pytest.approx(0.1)
    assert hamiltonian.matrix[0, legN] == pytest.approx(-0.1)
    assert hamiltonian.matrix[0, 0] == -1.0
    assert hamiltonian.matrix[5, 6] == -1.0
    assert hamiltonian.off_tridiagonal_nonzeros() == 4


def test_zero_coupling_has_no_atom_field_entries():
    lattice = Lattice.centered(6, 101)
    hamiltonian = build_hamiltonian(CONFIG_A.replace(coupling=0.0), lattice)
    assert hamiltonian.off_tridiagonal_nonzeros() == 0


def test_phase_gauge():
    lattice = Lattice.centered(6, 101)
    first = build_hamiltonian(CONFIG_A.replace(phase=0.4), lattice)
    second = build_hamiltonian(CONFIG_A.replace(phase=0.4 + 2 * math.pi), lattice)
    assert np.allclose(first.matrix, second.matrix, rtol=0, atol=1e-12)


def test_free_chain_spectrum():
    params = SystemParams(omega_atom=0.5, coupling=0.0, leg_separation=1)
    decomp = diagonalize(build_hamiltonian(params, Lattice(5, 0, 1)))
    expected = sorted([-2 * math.cos(m * math.pi / 6) for m in range(1, 6)] + [0.5])
    assert np.allclose(decomp.energies, expected, atol=1e-12)


def test_resonant_momentum():
    assert resonant_momentum(CONFIG_A) == pytest.approx(math.pi / 3, abs=1e-12)
    assert resonant_momentum(CONFIG_B) == pytest.approx(math.pi / 4, abs=1e-12)
    for params in (CONFIG_A, CONFIG_B, CONFIG_A.replace(omega_atom=1.3, omega_cavity=0.2, hopping=0.8)):
        assert dispersion(resonant_momentum(params), params) == pytest.approx(params.omega_atom, abs=1e-12)


def test_out_of_band():
    with pytest.raises(Exception) as e_info:
        resonant_momentum(CONFIG_A.replace(omega_atom=-3.0))
    assert str(e_info.value) == "OutOfBandError: omega_atom=-3.0 is not strictly inside the band (-2.0, 2.0)."


def test_dispersion_vectorized():
    k = np.linspace(-math.pi, math.pi, 7)
    assert np.allclose(dispersion(k, CONFIG_A), -2 * np.cos(k))
    assert band_edges(CONFIG_A) == (-2.0, 2.0)


def test_coupling_amplitude_vanishes_for_bic_configs():
    assert abs(coupling_amplitude(CONFIG_A, 2001)) < 1e-12
    assert abs(coupling_amplitude(CONFIG_B, 2001)) < 1e-12
    assert abs(coupling_amplitude(CONFIG_A.replace(phase=0.0), 1)) == pytest.approx(0.2)


def test_phase_normalized():
    assert CONFIG_A.replace(phase=3 * math.pi).phase == pytest.approx(math.pi)
    assert CONFIG_A.replace(phase=-math.pi / 2).phase == pytest.approx(1.5 * math.pi)


def test_invalid_params():
    with pytest.raises(Exception) as e_info:
        SystemParams(omega_atom=-1.0, hopping=0.0)
    assert str(e_info.value) == "ConfigurationError: system.hopping: must be > 0, got 0.0"

    with pytest.raises(Exception) as e_info:
        SystemParams(omega_atom=-1.0, coupling=-0.1)
    assert str(e_info.value) == "ConfigurationError: system.coupling: must be >= 0, got -0.1"


def test_invalid_geometry():
    with pytest.raises(Exception) as e_info:
        Lattice(20, 15, 6)
    assert str(e_info.value).startswith("ConfigurationError: lattice.leg0_index:")

    with pytest.raises(Exception) as e_info:
        Lattice.centered(6, 6)
    assert str(e_info.value) == (
        "ConfigurationError: lattice.total_sites: leg_separation=6 must be smaller than total_sites=6"
    )

    with pytest.raises(Exception) as e_info:
        build_hamiltonian(CONFIG_A, Lattice.centered(5, 101))
    assert str(e_info.value).startswith("ConfigurationError: lattice.leg_separation:")


def test_centering():
    lattice = Lattice.centered(6)
    assert (lattice.total_sites, lattice.leg0_index, lattice.legN_index) == (2001, 997, 1003)
    assert lattice.is_centered and lattice.warnings == ()
    assert lattice.causal_horizon(1.0) == pytest.approx(498.5)
    assert lattice.absolute(3) == 1000

    off_center = Lattice(401, 10, 6)
    assert not off_center.is_centered
    assert len(off_center.warnings) == 1
