"""Dispersion, resonant momentum and Hamiltonian construction for the giant atom waveguide."""

import logging
import math
from typing import Tuple

import numpy as np

from ..base_classes.hamiltonian import HamiltonianMatrix
from ..base_classes.system import Lattice, SystemParams
from ..exceptions.model_errors import ConfigurationError, OutOfBandError

logger = logging.getLogger(__name__)


def band_edges(params: SystemParams) -> Tuple[float, float]:
    """Lower and upper edges of the single photon band, omega_c -/+ 2 xi."""
    return (params.omega_cavity - 2 * params.hopping, params.omega_cavity + 2 * params.hopping)


def dispersion(k, params: SystemParams):
    """Photon dispersion omega_k = omega_c - 2 xi cos k.

    Args:
        k (float | np.ndarray): Wavenumber(s) in [-pi, pi].
        params (SystemParams): System parameters.

    Returns:
        float | np.ndarray: Mode energies.
    """
    return params.omega_cavity - 2 * params.hopping * np.cos(k)


def resonant_momentum(params: SystemParams) -> float:
    """Wavenumber K in (0, pi) of the waveguide mode resonant with the atom.

    Args:
        params (SystemParams): System parameters.

    Raises:
        OutOfBandError: The atomic frequency is not strictly inside the band.

    Returns:
        float: K = arccos((omega_c - Omega) / 2 xi).
    """
    if not params.in_band:
        raise OutOfBandError(params.omega_atom, band_edges(params))
    return math.acos((params.omega_cavity - params.omega_atom) / (2 * params.hopping))


def coupling_amplitude(params: SystemParams, n_modes: int) -> complex:
    """Effective coupling G(phi) = (g / sqrt(n_modes)) (1 + e^{i(KN + phi)}) to the resonant mode.

    Raises:
        OutOfBandError: The atomic frequency is not strictly inside the band.
    """
    if n_modes < 1:
        raise ConfigurationError("n_modes", f"must be >= 1, got {n_modes!r}")
    K = resonant_momentum(params)
    return params.coupling / math.sqrt(n_modes) * (1 + np.exp(1j * (K * params.leg_separation + params.phase)))


def build_hamiltonian(params: SystemParams, lattice: Lattice) -> HamiltonianMatrix:
    """Builds the single-excitation Hamiltonian H = H_A + H_c + H_I.

    Args:
        params (SystemParams): System parameters.
        lattice (Lattice): Chain geometry, its leg separation must equal params.leg_separation.

    Raises:
        ConfigurationError: Geometry inconsistent with the parameters.

    Returns:
        HamiltonianMatrix: Hermitian (N_c + 1) x (N_c + 1) complex matrix.
    """
    if lattice.leg_separation != params.leg_separation:
        raise ConfigurationError(
            "lattice.leg_separation",
            f"lattice has N={lattice.leg_separation} but params have N={params.leg_separation}",
        )
    if params.leg_separation >= lattice.total_sites:
        raise ConfigurationError("lattice.total_sites", "leg_separation must be smaller than total_sites")

    n_sites = lattice.total_sites
    matrix = np.zeros((n_sites + 1, n_sites + 1), dtype=complex)
    matrix[0, 0] = params.omega_atom
    sites = np.arange(1, n_sites + 1)
    matrix[sites, sites] = params.omega_cavity
    matrix[sites[:-1], sites[1:]] = -params.hopping
    matrix[sites[1:], sites[:-1]] = -params.hopping

    leg0 = 1 + lattice.leg0_index
    legN = 1 + lattice.legN_index
    right_leg = params.coupling * np.exp(1j * params.phase)
    matrix[leg0, 0] = params.coupling
    matrix[0, leg0] = params.coupling
    matrix[legN, 0] = right_leg
    matrix[0, legN] = np.conj(right_leg)

    logger.debug("Built Hamiltonian of dimension %d for %r", n_sites + 1, params)
    return HamiltonianMatrix(matrix, params, lattice)
