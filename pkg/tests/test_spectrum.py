import math

import numpy as np
import pytest

from giantbic.base_classes.hamiltonian import HamiltonianMatrix
from giantbic.base_classes.spectrum import StateClass
from giantbic.base_classes.system import Lattice
from giantbic.utils.model import build_hamiltonian
from giantbic.utils.spectrum import (
    bic_condition,
    classify_states,
    diagonalize,
    mirror_condition,
    momentum_profile,
)
from tests.conftest import CONFIG_A, CONFIG_B


def test_decomposition_accuracy(config_a):
    decomp, _ = config_a
    assert len(decomp) == 2002
    assert np.all(np.diff(decomp.energies) >= 0)
    assert float(np.max(decomp.residuals())) <= 1e-10
    assert decomp.orthonormality_error() <= 1e-10


def test_gauge_is_fixed(config_a):
    decomp, _ = config_a
    atom = decomp.states[0]
    coupled = np.abs(atom) > 1e-12
    assert np.all(np.abs(atom[coupled].imag) < 1e-14)
    assert np.all(atom[coupled].real > 0)


def test_config_a_bic(config_a):
    decomp, bound_states = config_a
    assert bound_states.bic is not None
    assert bound_states.bic.energy == pytest.approx(-1.0, abs=1e-10)
    in_band = [row for row in bound_states.table if row.state_class == StateClass.BIC]
    assert len(in_band) == 1
    assert np.sum(np.abs(decomp.energies + 1.0) <= 1e-10) == 1


def test_weak_coupling_has_no_bocs_at_phase_pi(config_a):
    # edge values of f vanish for phi = pi, N = 6; roots need g > 1/sqrt(6) (lower) and g > 1/sqrt(2) (upper)
    _, bound_states = config_a
    assert bound_states.lower_boc is None
    assert bound_states.upper_boc is None
    assert bound_states.missing() == ["lower_boc", "upper_boc"]


def test_config_b_bic(config_b):
    _, bound_states = config_b
    assert bound_states.bic is not None
    assert bound_states.bic.energy == pytest.approx(-math.sqrt(2), abs=1e-10)


def test_strong_coupling_has_all_three(strong):
    _, bound_states = strong
    assert bound_states.is_complete
    assert bound_states.lower_boc.energy < -2.0
    assert bound_states.upper_boc.energy > 2.0
    assert bound_states.bic.energy == pytest.approx(-1.0, abs=1e-10)


def test_broken_condition_has_no_bic():
    params = CONFIG_A.replace(phase=0.0)
    decomp = diagonalize(build_hamiltonian(params, Lattice.centered(6)))
    bound_states = classify_states(decomp)
    assert bound_states.bic is None
    assert bound_states.lower_boc is not None
    assert bound_states.upper_boc is not None


def test_zero_coupling_has_no_bound_states():
    params = CONFIG_A.replace(coupling=0.0)
    decomp = diagonalize(build_hamiltonian(params, Lattice.centered(6, 401)))
    bound_states = classify_states(decomp)
    assert bound_states.missing() == ["lower_boc", "bic", "upper_boc"]


def test_ambiguous_classification():
    decomp = diagonalize(build_hamiltonian(CONFIG_A, Lattice.centered(6, 101)))
    with pytest.raises(Exception) as e_info:
        classify_states(decomp, localization=0.05)
    assert str(e_info.value).startswith("ClassificationError: ambiguous in-band localized states")


def test_non_hermitian_input():
    hamiltonian = build_hamiltonian(CONFIG_A, Lattice.centered(6, 51))
    matrix = np.array(hamiltonian.matrix)
    matrix[0, 1] += 0.5
    with pytest.raises(Exception) as e_info:
        diagonalize(HamiltonianMatrix(matrix, hamiltonian.params, hamiltonian.lattice))
    assert str(e_info.value).startswith("InternalError: Hamiltonian is not Hermitian")


def test_bic_condition():
    assert bic_condition(CONFIG_A)[0]
    assert bic_condition(CONFIG_B)[0]
    holds, value = bic_condition(CONFIG_A.replace(phase=0.0))
    assert not holds
    assert value == pytest.approx(4.0)
    assert mirror_condition(CONFIG_A)[0]
    assert mirror_condition(CONFIG_B)[0]


def test_bic_condition_out_of_band():
    with pytest.raises(Exception) as e_info:
        bic_condition(CONFIG_A.replace(omega_atom=2.5))
    assert str(e_info.value).startswith("OutOfBandError:")


def test_momentum_profile(config_a):
    decomp, bound_states = config_a
    profile = momentum_profile(bound_states.bic.state, decomp.lattice)
    photon = float(np.sum(np.abs(bound_states.bic.state[1:]) ** 2))

    assert float(np.sum(profile.weights)) == pytest.approx(photon, abs=1e-10)
    assert abs(abs(profile.peak_momentum()) - math.pi / 3) < 0.15
    assert profile.weights[np.argmin(np.abs(profile.k))] < 1e-20
    assert profile.k[0] == pytest.approx(-math.pi, abs=2 * math.pi / 2001)


def test_classification_export(config_a):
    _, bound_states = config_a
    rows = [row.to_dict() for row in bound_states.table]
    assert len(rows) == 2002
    assert list(rows[0]) == ["index", "energy", "class", "atom_weight", "photon_weight_in_span"]
    assert bound_states.to_dict()["bic"]["energy"] == pytest.approx(-1.0, abs=1e-10)
