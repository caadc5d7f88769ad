""" This file contains classes describing the closed-form bound state in the continuum."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from .system import Lattice, SystemParams


@dataclass(frozen=True)
class ResidueKernel:
    """Unit-circle roots z_{1,2} = e^{+-iK} of xi z^2 + Delta z + xi."""

    z1: complex
    z2: complex
    sin_k: float


@dataclass(frozen=True, eq=False)
class AnalyticBIC:
    """Closed-form BIC: atom amplitude alpha (real-positive) and site amplitudes beta over the whole chain."""

    alpha: complex
    beta: np.ndarray
    K: float
    delta: float
    energy: float
    params: SystemParams
    lattice: Lattice

    def __post_init__(self):
        self.beta.setflags(write=False)

    @property
    def vector(self) -> np.ndarray:
        """The state in the [atom, sites] basis."""
        return np.concatenate(([self.alpha], self.beta))

    def profile(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """beta_j for leg-relative sites start..stop (inclusive), the span [0, N] by default."""
        stop = self.params.leg_separation if stop is None else stop
        return self.beta[self.lattice.leg0_index + start : self.lattice.leg0_index + stop + 1]

    def __repr__(self) -> str:
        return f"< giantbic.AnalyticBIC | E: {self.energy:.12g} | K: {self.K:.12g} | alpha: {abs(self.alpha):.12g} >"


@dataclass(frozen=True)
class BICReport:
    """Comparison of an analytic BIC with a Hamiltonian and, optionally, the numeric BIC."""

    residual: float
    overlap: Optional[float]
    flagged: bool
    tolerance: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "residual": self.residual,
            "overlap": self.overlap,
            "flagged": self.flagged,
            "tolerance": self.tolerance,
        }

    def __repr__(self) -> str:
        return f"< giantbic.BICReport | residual: {self.residual:.3e} | overlap: {self.overlap} | flagged: {self.flagged} >"
