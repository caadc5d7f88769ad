"""Bound states outside the continuum from the transcendental self-energy equation.

The self-energy integral

    I(E) = int_{-pi}^{pi} [1 + cos(kN + phi)] / (E - omega_c + 2 xi cos k) dk

is evaluated with the residue theorem: substituting z = e^{ik} leaves a single
simple pole z_in inside the unit circle whenever |E - omega_c| > 2 xi, giving

    I(E) = 2 pi (1 + cos(phi) z_in^N) / (sgn(eps) sqrt(eps^2 - 4 xi^2)),  eps = E - omega_c.

The sin(phi) sin(kN) part of the numerator is odd in k and integrates to zero.
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np
from scipy import integrate, optimize

from ..base_classes.spectrum import BOCRoot
from ..base_classes.system import SystemParams
from ..configs import ROOT_CAP_COUPLINGS, ROOT_EDGE_OFFSET, ROOT_XTOL
from ..exceptions.model_errors import ConfigurationError
from ..exceptions.spectrum_errors import DomainError
from .model import band_edges

logger = logging.getLogger(__name__)


def _check_outside(energy: float, params: SystemParams) -> float:
    eps = energy - params.omega_cavity
    if abs(eps) <= 2 * params.hopping:
        raise DomainError(energy, band_edges(params))
    return eps


def inner_pole(energy: float, params: SystemParams) -> float:
    """Root of xi z^2 + eps z + xi lying strictly inside the unit circle."""
    eps = _check_outside(energy, params)
    root = math.sqrt(eps * eps - 4 * params.hopping**2)
    return (-eps + math.copysign(root, eps)) / (2 * params.hopping)


def self_energy_integral(energy: float, params: SystemParams) -> float:
    """Closed-form I(E) for an energy outside the band.

    Raises:
        DomainError: |E - omega_c| <= 2 xi.
    """
    eps = _check_outside(energy, params)
    z_in = inner_pole(energy, params)
    root = math.sqrt(eps * eps - 4 * params.hopping**2)
    numerator = 1.0 + math.cos(params.phase) * z_in**params.leg_separation
    return 2 * math.pi * numerator / math.copysign(root, eps)


def self_energy_integral_quad(energy: float, params: SystemParams) -> float:
    """I(E) by adaptive quadrature, used to cross-check the closed form."""
    eps = _check_outside(energy, params)

    def integrand(k: float) -> float:
        return (1 + math.cos(k * params.leg_separation + params.phase)) / (eps + 2 * params.hopping * math.cos(k))

    value, _ = integrate.quad(
        integrand, -math.pi, math.pi, points=[0.0], epsabs=1e-14, epsrel=1e-13, limit=400 + 20 * params.leg_separation
    )
    return value


def bound_state_function(params: SystemParams) -> Callable[[float], float]:
    """f(E) = E - Omega - (g^2 / pi) I(E), whose zeros outside the band are the BOC energies."""
    prefactor = params.coupling**2 / math.pi

    def residual(energy: float) -> float:
        return energy - params.omega_atom - prefactor * self_energy_integral(energy, params)

    return residual


def _bracket(residual: Callable[[float], float], edge: float, direction: float, cap: float) -> Optional[tuple]:
    offset = ROOT_EDGE_OFFSET
    inner = edge + direction * offset
    inner_value = residual(inner)
    while True:
        offset *= 2
        outer = edge + direction * offset
        if direction * (outer - cap) > 0:
            outer = cap
        outer_value = residual(outer)
        if inner_value == 0:
            return inner, inner
        if np.sign(inner_value) != np.sign(outer_value):
            return (inner, outer) if inner < outer else (outer, inner)
        if outer == cap:
            return None
        inner, inner_value = outer, outer_value


def boc_energies(params: SystemParams) -> List[BOCRoot]:
    """Solves the bound state equation on both sides of the band.

    f(E) is strictly increasing on each side, so there is at most one root per side.
    Brackets grow geometrically away from the band edge up to omega_c -/+ (2 xi + |Delta| + 10 g)
    and the root is refined by bisection.

    Args:
        params (SystemParams): System parameters with g > 0.

    Raises:
        ConfigurationError: g = 0.

    Returns:
        List[BOCRoot]: Roots found, lower side first. A side without a sign change is omitted.
    """
    if not params.coupling > 0:
        raise ConfigurationError("system.coupling", "bound state roots require g > 0")

    residual = bound_state_function(params)
    low, high = band_edges(params)
    reach = 2 * params.hopping + abs(params.detuning) + ROOT_CAP_COUPLINGS * params.coupling
    roots: List[BOCRoot] = []
    for side, edge, direction in (("lower", low, -1.0), ("upper", high, 1.0)):
        cap = params.omega_cavity + direction * reach
        bracket = _bracket(residual, edge, direction, cap)
        if bracket is None:
            logger.info("No %s bound state root for %r", side, params)
            continue
        a, b = bracket
        energy = a if a == b else optimize.bisect(residual, a, b, xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps)
        roots.append(BOCRoot(float(energy), side))
    return roots
