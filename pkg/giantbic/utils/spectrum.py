"""Exact diagonalization and bound state classification."""

import logging
from typing import List, Tuple

import numpy as np
import scipy.linalg

from ..base_classes.hamiltonian import HamiltonianMatrix
from ..base_classes.spectrum import (
    BoundState,
    BoundStateSet,
    ClassificationRow,
    EigenDecomposition,
    MomentumProfile,
    StateClass,
)
from ..base_classes.system import Lattice, SystemParams
from ..configs import (
    BIC_CONDITION_TOL,
    BOUND_LEAKAGE_TOL,
    HERMITICITY_TOL,
    LOCALIZATION_THRESHOLD,
    LOCALIZATION_WINDOW,
    PHOTON_FLOOR,
    TOL_EDGE,
)
from ..exceptions.spectrum_errors import ClassificationError, InternalError
from .model import band_edges, resonant_momentum

logger = logging.getLogger(__name__)


def _fix_gauge(states: np.ndarray) -> np.ndarray:
    # atom component real-positive; photon-only states use their largest component
    columns = np.arange(states.shape[1])
    magnitudes = np.abs(states)
    pivot_rows = np.where(magnitudes[0] > 1e-12, 0, np.argmax(magnitudes, axis=0))
    pivots = states[pivot_rows, columns]
    return states * (pivots.conj() / np.abs(pivots))


def diagonalize(hamiltonian: HamiltonianMatrix) -> EigenDecomposition:
    """Full dense diagonalization of the single-excitation Hamiltonian.

    Args:
        hamiltonian (HamiltonianMatrix): Matrix built by build_hamiltonian.

    Raises:
        InternalError: The matrix is not Hermitian.

    Returns:
        EigenDecomposition: Ascending energies with orthonormal, gauge-fixed eigenvectors.
    """
    error = hamiltonian.hermiticity_error()
    scale = max(1.0, float(np.max(np.abs(hamiltonian.matrix))))
    if error > HERMITICITY_TOL * scale:
        raise InternalError(f"Hamiltonian is not Hermitian (max |H - H^dagger| = {error:.3e})")

    energies, states = scipy.linalg.eigh(hamiltonian.matrix)
    logger.debug("Diagonalized %d x %d Hamiltonian", *hamiltonian.matrix.shape)
    return EigenDecomposition(np.ascontiguousarray(energies), _fix_gauge(states), hamiltonian)


def bic_condition(params: SystemParams) -> Tuple[bool, float]:
    """Checks whether the atom decouples from its resonant mode, G(K) = 0.

    Raises:
        OutOfBandError: The atomic frequency is not strictly inside the band.

    Returns:
        Tuple[bool, float]: (condition holds, |1 + e^{i(KN + phi)}|^2)
    """
    K = resonant_momentum(params)
    value = float(abs(1 + np.exp(1j * (K * params.leg_separation + params.phase))) ** 2)
    return value <= BIC_CONDITION_TOL, value


def mirror_condition(params: SystemParams) -> Tuple[bool, float]:
    """Checks G(-K) = 0, i.e. |1 + e^{i(-KN + phi)}|^2 vanishes.

    Together with bic_condition this forces KN to be a multiple of pi, which is
    what terminates the photon profile at the right leg.
    """
    K = resonant_momentum(params)
    value = float(abs(1 + np.exp(1j * (-K * params.leg_separation + params.phase))) ** 2)
    return value <= BIC_CONDITION_TOL, value


def _pick_boc(
    candidates: np.ndarray, window_weights: np.ndarray, side: str, decomp: EigenDecomposition, warnings: List[str]
):
    if candidates.size == 0:
        return None, []
    best = candidates[np.argmax(window_weights[candidates])]
    extras = [int(i) for i in candidates if i != best]
    if extras:
        message = f"{len(extras)} extra {side} candidates flagged at indices {extras}"
        logger.warning(message)
        warnings.append(message)
    leakage = 1.0 - window_weights[best]
    if leakage > BOUND_LEAKAGE_TOL:
        message = f"{side} at E={decomp.energies[best]:.10g} leaks {leakage:.3e} of its weight outside the window"
        logger.warning(message)
        warnings.append(message)
    return BoundState(int(best), float(decomp.energies[best]), decomp.state(best)), extras


def classify_states(
    decomp: EigenDecomposition,
    params: SystemParams = None,
    lattice: Lattice = None,
    tol_edge: float = TOL_EDGE,
    localization: float = LOCALIZATION_THRESHOLD,
    window: int = LOCALIZATION_WINDOW,
) -> BoundStateSet:
    """Sorts eigenstates into propagating modes, bound states outside the band and the BIC.

    Args:
        decomp (EigenDecomposition): Output of diagonalize.
        params (SystemParams, optional): Defaults to the decomposition's parameters.
        lattice (Lattice, optional): Defaults to the decomposition's lattice.
        tol_edge (float, optional): Distance outside the band needed to count as a BOC. Defaults to TOL_EDGE.
        localization (float, optional): Localization ratio a BIC must exceed. Defaults to LOCALIZATION_THRESHOLD.
        window (int, optional): Sites around the legs used to judge BOC localization. Defaults to LOCALIZATION_WINDOW.

    Raises:
        ClassificationError: More than one in-band state passes the localization test.

    Returns:
        BoundStateSet: Bound states plus the per-eigenstate classification table.
    """
    params = decomp.params if params is None else params
    lattice = decomp.lattice if lattice is None else lattice
    low, high = band_edges(params)
    energies = decomp.energies

    atom = decomp.atom_weights()
    span = decomp.photon_weights(lattice.leg0_index, lattice.legN_index)
    photon = np.clip(1.0 - atom, 0.0, None)
    ratio = atom + span
    photon_ratio = np.divide(span, photon, out=np.zeros_like(span), where=photon > PHOTON_FLOOR)
    windowed = atom + decomp.photon_weights(lattice.leg0_index - window, lattice.legN_index + window)

    below = np.flatnonzero(energies < low - tol_edge)
    above = np.flatnonzero(energies > high + tol_edge)
    inside = (energies >= low - tol_edge) & (energies <= high + tol_edge)
    bic_candidates = np.flatnonzero(inside & (ratio > localization) & (photon_ratio > localization))

    if bic_candidates.size > 1:
        raise ClassificationError(energies[bic_candidates].tolist(), ratio[bic_candidates].tolist())

    warnings: List[str] = []
    lower_boc, lower_extra = _pick_boc(below, windowed, "lower_boc", decomp, warnings)
    upper_boc, upper_extra = _pick_boc(above, windowed, "upper_boc", decomp, warnings)
    bic = None
    if bic_candidates.size == 1:
        index = int(bic_candidates[0])
        bic = BoundState(index, float(energies[index]), decomp.state(index))

    classes = np.full(len(decomp), StateClass.PROPAGATING, dtype=object)
    for bound, label in ((lower_boc, StateClass.LOWER_BOC), (upper_boc, StateClass.UPPER_BOC), (bic, StateClass.BIC)):
        if bound is not None:
            classes[bound.index] = label
    for index in lower_extra + upper_extra:
        classes[index] = StateClass.EXTRA

    table = tuple(
        ClassificationRow(int(n), float(energies[n]), classes[n], float(atom[n]), float(span[n]), float(ratio[n]))
        for n in range(len(decomp))
    )
    bound_states = BoundStateSet(lower_boc, upper_boc, bic, table, tuple(warnings))
    logger.info("Classified spectrum: %r", bound_states)
    return bound_states


def momentum_profile(state: np.ndarray, lattice: Lattice) -> MomentumProfile:
    """Momentum-space photon amplitudes beta_k of a state.

    Args:
        state (np.ndarray): Vector in the [atom, sites] basis, or photon amplitudes only.
        lattice (Lattice): Chain geometry.

    Returns:
        MomentumProfile: k grid 2 pi m / N_c shifted into [-pi, pi) with the orthonormal DFT amplitudes.
    """
    state = np.asarray(state)
    sites = state[1:] if state.shape[0] == lattice.dimension else state
    if sites.shape[0] != lattice.total_sites:
        raise InternalError(f"state of length {state.shape[0]} does not match {lattice!r}")
    amplitudes = np.fft.fftshift(np.fft.fft(sites, norm="ortho"))
    k = np.fft.fftshift(2 * np.pi * np.fft.fftfreq(lattice.total_sites))
    return MomentumProfile(k, amplitudes)
