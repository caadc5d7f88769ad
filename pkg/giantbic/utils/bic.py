"""Closed-form bound state in the continuum and its residue bookkeeping.

In z = e^{ik} the real-space amplitudes become contour integrals over the unit
circle whose only pole inside is z = 0, of order j (and j - N for the right
leg). The same bookkeeping gives the M integral that pins the BIC at E = Omega.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy import integrate

from ..base_classes.bic import AnalyticBIC, BICReport, ResidueKernel
from ..base_classes.hamiltonian import HamiltonianMatrix
from ..base_classes.spectrum import BoundStateSet
from ..base_classes.system import Lattice, SystemParams
from ..exceptions.model_errors import ConditionError, ConfigurationError, OutOfBandError, SingularParameterError
from .model import band_edges, resonant_momentum
from .spectrum import bic_condition, mirror_condition

logger = logging.getLogger(__name__)

M_READINGS = ("principal", "residue")


def residue_kernel(params: SystemParams) -> ResidueKernel:
    """z_{1,2} = -(Delta / 2 xi) +- i sqrt(1 - (Delta / 2 xi)^2) = e^{+-iK}.

    Raises:
        SingularParameterError: The atom sits exactly on a band edge.
        OutOfBandError: The atom lies outside the band.
    """
    ratio = params.detuning / (2 * params.hopping)
    if abs(ratio) == 1.0:
        raise SingularParameterError(params.omega_atom)
    if abs(ratio) > 1.0:
        raise OutOfBandError(params.omega_atom, band_edges(params))
    sin_k = math.sqrt(1.0 - ratio * ratio)
    return ResidueKernel(complex(-ratio, sin_k), complex(-ratio, -sin_k), sin_k)


def _pole_residue(kernel: ResidueKernel, order: int) -> complex:
    # Res_{z=0} 1 / ((z - z1)(z - z2) z^order)
    if order <= 0:
        return 0j
    return (kernel.z2 ** (-order) - kernel.z1 ** (-order)) / (2j * kernel.sin_k)


def residue_amplitude(params: SystemParams, site: int) -> complex:
    """beta_j / alpha at E = Omega from the residue at z = 0, for any leg-relative site j.

    j < 0 has no pole; 0 <= j <= N picks up the left leg only; j > N adds the right
    leg's pole of order j - N, which cancels the first only when G(K) = G(-K) = 0.
    """
    kernel = residue_kernel(params)
    left = _pole_residue(kernel, site)
    right = np.exp(1j * params.phase) * _pole_residue(kernel, site - params.leg_separation)
    return params.coupling / params.hopping * (left + right)


def analytic_bic(params: SystemParams, lattice: Lattice) -> AnalyticBIC:
    """Closed-form BIC, beta_j / alpha = 2 g sin(Kj) / sqrt(4 xi^2 - Delta^2) between the legs.

    Args:
        params (SystemParams): In-band parameters satisfying G(K) = G(-K) = 0.
        lattice (Lattice): Chain geometry.

    Raises:
        ConditionError: The coupling to the resonant mode does not vanish, so the
            profile would not terminate beyond the right leg.

    Returns:
        AnalyticBIC: Normalized state with alpha real-positive and energy Omega.
    """
    holds, value = bic_condition(params)
    if not holds:
        raise ConditionError("G(K) = 0", value)
    holds, value = mirror_condition(params)
    if not holds:
        raise ConditionError("G(-K) = 0", value)
    if lattice.leg_separation != params.leg_separation:
        raise ConfigurationError("lattice.leg_separation", "does not match params.leg_separation")

    K = resonant_momentum(params)
    delta = params.detuning
    span = np.arange(params.leg_separation + 1)
    ratios = 2 * params.coupling * np.sin(K * span) / math.sqrt(4 * params.hopping**2 - delta**2)

    norm = math.sqrt(1.0 + float(np.sum(ratios**2)))
    beta = np.zeros(lattice.total_sites, dtype=complex)
    beta[lattice.leg0_index : lattice.legN_index + 1] = ratios / norm
    return AnalyticBIC(complex(1.0 / norm), beta, K, delta, params.omega_atom, params, lattice)


def m_integral(params: SystemParams, reading: str = "residue") -> complex:
    """M = int [1 + cos(kN + phi)] / (Omega - omega_c + 2 xi cos k) dk over [-pi, pi].

    The integrand has on-shell poles at k = +-K. The default "residue" reading
    keeps only the z = 0 pole, -pi e^{-i phi} sin(KN) / (xi sin K), the same
    bookkeeping as residue_amplitude. The "principal" reading is the Cauchy
    principal value, pi cos(phi) sin(KN) / (xi sin K), which m_integral_quad
    reproduces independently.
    Both vanish whenever sin(KN) = 0, which does not by itself imply a BIC.

    Raises:
        ValueError: Unknown reading.
        SingularParameterError: sin K = 0.
        OutOfBandError: The atom lies outside the band.
    """
    if reading not in M_READINGS:
        raise ValueError(f"Invalid option for reading. Options: {list(M_READINGS)}")
    kernel = residue_kernel(params)
    K = resonant_momentum(params)
    scale = math.pi * math.sin(K * params.leg_separation) / (params.hopping * kernel.sin_k)
    if reading == "principal":
        return complex(math.cos(params.phase) * scale)
    return -np.exp(-1j * params.phase) * scale


def m_integral_quad(params: SystemParams) -> float:
    """Principal value of M by adaptive quadrature with a Cauchy weight (independent of the closed forms)."""
    residue_kernel(params)
    K = resonant_momentum(params)
    N = params.leg_separation
    cos_phi = math.cos(params.phase)

    def regular(k: float) -> float:
        # (k - K) / (cos k - cos K), written without cancellation near k = K
        half = 0.5 * (k - K)
        return -1.0 / (math.sin(0.5 * (k + K)) * np.sinc(half / math.pi)) * (1 + cos_phi * math.cos(k * N))

    # the integrand is even in k once the odd sin(phi) sin(kN) part is dropped
    value, _ = integrate.quad(
        regular, 0.0, math.pi, weight="cauchy", wvar=K, epsabs=1e-13, epsrel=1e-13, limit=400 + 20 * N
    )
    return value / params.hopping


def verify_bic(
    analytic: AnalyticBIC,
    hamiltonian: HamiltonianMatrix,
    bound_states: Optional[BoundStateSet] = None,
    tolerance: float = 1e-8,
) -> BICReport:
    """Checks the analytic BIC against a Hamiltonian and, when available, the numeric BIC.

    Args:
        analytic (AnalyticBIC): Closed-form state.
        hamiltonian (HamiltonianMatrix): Matrix of the same dimension.
        bound_states (BoundStateSet, optional): Classified numeric bound states. Defaults to None.
        tolerance (float, optional): Residual, in units of xi, above which the state is flagged. Defaults to 1e-8.

    Raises:
        ConfigurationError: Dimension mismatch.

    Returns:
        BICReport: Residual ||H v - Omega v||, overlap |<v_num|v>| or None, and the flag.
    """
    vector = analytic.vector
    if vector.shape[0] != hamiltonian.dimension:
        raise ConfigurationError(
            "lattice.total_sites",
            f"analytic state has dimension {vector.shape[0]}, Hamiltonian {hamiltonian.dimension}",
        )
    residual = float(np.linalg.norm(hamiltonian.matrix @ vector - analytic.energy * vector))
    overlap = None
    if bound_states is not None and bound_states.bic is not None:
        overlap = float(abs(np.vdot(bound_states.bic.state, vector)))
    elif bound_states is not None:
        logger.warning("No numeric BIC classified; comparison limited to the residual")

    scale = hamiltonian.params.hopping
    flagged = residual > tolerance * scale
    if flagged:
        logger.warning("Analytic BIC residual %.3e exceeds %.1e xi", residual, tolerance)
    return BICReport(residual, overlap, flagged, tolerance)
