""" This file contains the classes describing the giant atom, the waveguide and their geometry."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..configs import BOUNDARY_CONDITIONS, CENTERING_FRACTION, DEFAULT_TOTAL_SITES
from ..exceptions.model_errors import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the giant atom and the coupled resonator waveguide, in units of the hopping."""

    omega_atom: float
    omega_cavity: float = 0.0
    hopping: float = 1.0
    coupling: float = 0.1
    leg_separation: int = 6
    phase: float = 0.0

    def __post_init__(self):
        if not self.hopping > 0:
            raise ConfigurationError("system.hopping", f"must be > 0, got {self.hopping!r}")
        if not self.coupling >= 0:
            raise ConfigurationError("system.coupling", f"must be >= 0, got {self.coupling!r}")
        if int(self.leg_separation) != self.leg_separation or self.leg_separation < 1:
            raise ConfigurationError(
                "system.leg_separation", f"must be an integer >= 1, got {self.leg_separation!r}"
            )
        for name in ("omega_atom", "omega_cavity", "phase"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"system.{name}", "must be finite")

        # Gauge: phase lives in [0, 2pi)
        object.__setattr__(self, "leg_separation", int(self.leg_separation))
        object.__setattr__(self, "phase", float(self.phase) % (2 * math.pi))

    @property
    def detuning(self) -> float:
        """Atom-cavity detuning Omega - omega_c."""
        return self.omega_atom - self.omega_cavity

    @property
    def in_band(self) -> bool:
        return abs(self.detuning) < 2 * self.hopping

    def replace(self, **changes) -> "SystemParams":
        values = self.to_dict()
        values.update(changes)
        return SystemParams(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "omega_atom": self.omega_atom,
            "omega_cavity": self.omega_cavity,
            "hopping": self.hopping,
            "coupling": self.coupling,
            "leg_separation": self.leg_separation,
            "phase": self.phase,
        }

    @classmethod
    def parse_params(cls, values: Dict[str, Any]) -> "SystemParams":
        return cls(**{key: values[key] for key in cls.__dataclass_fields__ if key in values})

    def __repr__(self) -> str:
        return (
            f"< giantbic.SystemParams | Omega: {self.omega_atom:.6g} | omega_c: {self.omega_cavity:.6g} "
            f"| xi: {self.hopping:.6g} | g: {self.coupling:.6g} | N: {self.leg_separation} | phi: {self.phase:.6g} >"
        )


@dataclass(frozen=True)
class Lattice:
    """A finite hard-wall chain of resonators with the two coupling legs at leg0 and leg0 + N."""

    total_sites: int
    leg0_index: int
    leg_separation: int
    boundary: str = "hard-wall"
    warnings: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.boundary not in BOUNDARY_CONDITIONS:
            raise ConfigurationError("lattice.boundary", f"must be one of {BOUNDARY_CONDITIONS}")
        if self.leg_separation < 1:
            raise ConfigurationError("system.leg_separation", "must be >= 1")
        if self.leg_separation >= self.total_sites:
            raise ConfigurationError(
                "lattice.total_sites",
                f"leg_separation={self.leg_separation} must be smaller than total_sites={self.total_sites}",
            )
        if self.leg0_index < 0 or self.leg0_index + self.leg_separation >= self.total_sites:
            raise ConfigurationError(
                "lattice.leg0_index",
                f"legs [{self.leg0_index}, {self.leg0_index + self.leg_separation}] "
                f"do not fit in a chain of {self.total_sites} sites",
            )
        if not self.is_centered:
            message = (
                f"legs are off-center: margin {self.margin} < {CENTERING_FRACTION} * {self.total_sites}; "
                "bound states may feel the boundary"
            )
            logger.warning(message)
            object.__setattr__(self, "warnings", self.warnings + (message,))

    @classmethod
    def centered(cls, leg_separation: int, total_sites: int = DEFAULT_TOTAL_SITES) -> "Lattice":
        """Places both legs symmetrically about the middle of the chain.

        Args:
            leg_separation (int): Number of sites N between the legs.
            total_sites (int, optional): Chain length N_c. Defaults to DEFAULT_TOTAL_SITES.

        Raises:
            ConfigurationError: The legs do not fit in the chain.

        Returns:
            Lattice: Lattice with leg0 = (N_c - 1 - N) // 2.
        """
        if leg_separation >= total_sites:
            raise ConfigurationError(
                "lattice.total_sites",
                f"leg_separation={leg_separation} must be smaller than total_sites={total_sites}",
            )
        return cls(total_sites, (total_sites - 1 - leg_separation) // 2, leg_separation)

    @property
    def legN_index(self) -> int:
        return self.leg0_index + self.leg_separation

    @property
    def dimension(self) -> int:
        """Dimension of the single-excitation subspace (atom + sites)."""
        return self.total_sites + 1

    @property
    def margin(self) -> int:
        """Distance from the legs to the nearest wall."""
        return min(self.leg0_index, self.total_sites - 1 - self.legN_index)

    @property
    def is_centered(self) -> bool:
        return self.margin >= CENTERING_FRACTION * self.total_sites

    def absolute(self, site: int) -> int:
        """Absolute chain index of a site counted from the left leg (site j, with the left leg at j = 0)."""
        index = self.leg0_index + int(site)
        if not 0 <= index < self.total_sites:
            raise ConfigurationError("site", f"site {site} lies outside the chain")
        return index

    def basis_index(self, site: int) -> int:
        """Row of a site in the [atom, sites...] basis."""
        return 1 + self.absolute(site)

    def causal_horizon(self, hopping: float) -> float:
        """Time before which nothing emitted at the legs can reach a wall (max group velocity 2 xi)."""
        return self.margin / (2.0 * hopping)

    def __repr__(self) -> str:
        return (
            f"< giantbic.Lattice | N_c: {self.total_sites} | legs: [{self.leg0_index}, {self.legN_index}] "
            f"| boundary: {self.boundary} >"
        )
