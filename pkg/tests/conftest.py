import math

import pytest

from giantbic.base_classes.system import Lattice, SystemParams
from giantbic.utils.evolution import evolve, time_grid
from giantbic.utils.model import build_hamiltonian
from giantbic.utils.spectrum import classify_states, diagonalize

CONFIG_A = SystemParams(omega_atom=-1.0, omega_cavity=0.0, hopping=1.0, coupling=0.1, leg_separation=6, phase=math.pi)
CONFIG_B = SystemParams(omega_atom=-math.sqrt(2), omega_cavity=0.0, hopping=1.0, coupling=0.1, leg_separation=12, phase=0.0)
STRONG = CONFIG_A.replace(coupling=1.1)


def _solve(params: SystemParams, total_sites: int = 2001):
    lattice = Lattice.centered(params.leg_separation, total_sites)
    decomp = diagonalize(build_hamiltonian(params, lattice))
    return decomp, classify_states(decomp)


@pytest.fixture(scope="session")
def config_a():
    return _solve(CONFIG_A)


@pytest.fixture(scope="session")
def config_b():
    return _solve(CONFIG_B)


@pytest.fixture(scope="session")
def strong():
    return _solve(STRONG)


@pytest.fixture(scope="session")
def strong_trajectory(strong):
    decomp, _ = strong
    return evolve(decomp, "atom", time_grid(0.05, 400.0), (0, 1, 3))
