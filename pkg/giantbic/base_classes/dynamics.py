""" This file contains classes describing time evolution and the bound state model of the long-time dynamics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled observables of an evolution (or of an approximate model when exact is False)."""

    times: np.ndarray
    atom_population: np.ndarray
    sites: Tuple[int, ...]
    site_amplitudes: np.ndarray
    norm: np.ndarray
    exact: bool = True
    warnings: Tuple[str, ...] = field(default=())

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if self.times.shape[0] > 1 else 0.0

    def site(self, site: int) -> np.ndarray:
        """Complex amplitude beta_j(t) of a tracked, leg-relative site."""
        return self.site_amplitudes[:, self.sites.index(site)]

    def intensity(self, site: int) -> np.ndarray:
        return np.abs(self.site(site)) ** 2

    def window(self, start: float, stop: float = np.inf) -> "Trajectory":
        """Samples with start <= t <= stop."""
        mask = (self.times >= start) & (self.times <= stop)
        return Trajectory(
            self.times[mask],
            self.atom_population[mask],
            self.sites,
            self.site_amplitudes[mask],
            self.norm[mask],
            self.exact,
            self.warnings,
        )

    def columns(self) -> Dict[str, np.ndarray]:
        columns = {"t": self.times, "P_e": self.atom_population}
        for site in self.sites:
            amplitude = self.site(site)
            columns[f"re_beta_{site}"] = amplitude.real
            columns[f"im_beta_{site}"] = amplitude.imag
        columns["norm"] = self.norm
        return columns

    def __repr__(self) -> str:
        return (
            f"< giantbic.Trajectory | samples: {self.times.shape[0]} | t_max: {self.times[-1]:.6g} "
            f"| sites: {list(self.sites)} | exact: {self.exact} >"
        )


@dataclass(frozen=True, eq=False)
class BoundStateModel:
    """Lower BOC (L), BIC (I) and upper BOC (U) data entering the long-time dynamics.

    overlaps are c_a = <phi_a|psi(0)>, atom_amplitudes are <e|phi_a>, and
    photon_amplitudes[a][j] is d_{a,j} = <phi_a|a_j^dagger|G>.
    """

    energies: Dict[str, float]
    overlaps: Dict[str, complex]
    atom_amplitudes: Dict[str, complex]
    photon_amplitudes: Dict[str, Dict[int, complex]]
    sites: Tuple[int, ...]

    LABELS = ("L", "I", "U")

    @property
    def delta_L(self) -> float:
        return self.energies["I"] - self.energies["L"]

    @property
    def delta_U(self) -> float:
        return self.energies["U"] - self.energies["I"]

    @property
    def beat_frequencies(self) -> Dict[str, float]:
        return {
            "delta_L": self.delta_L,
            "delta_U": self.delta_U,
            "delta_L+delta_U": self.delta_L + self.delta_U,
        }

    @property
    def captured_weight(self) -> float:
        """sum |c_a|^2, the share of the initial state carried by the three bound states."""
        return float(sum(abs(c) ** 2 for c in self.overlaps.values()))

    def to_dict(self) -> Dict[str, Any]:
        def _complex(value: complex) -> List[float]:
            return [float(np.real(value)), float(np.imag(value))]

        return {
            "energies": dict(self.energies),
            "overlaps": {key: _complex(value) for key, value in self.overlaps.items()},
            "atom_amplitudes": {key: _complex(value) for key, value in self.atom_amplitudes.items()},
            "photon_amplitudes": {
                key: {str(site): _complex(value) for site, value in values.items()}
                for key, values in self.photon_amplitudes.items()
            },
            "beat_frequencies": self.beat_frequencies,
            "captured_weight": self.captured_weight,
        }

    def __repr__(self) -> str:
        return (
            f"< giantbic.BoundStateModel | E_L: {self.energies['L']:.10g} | E_I: {self.energies['I']:.10g} "
            f"| E_U: {self.energies['U']:.10g} | captured: {self.captured_weight:.6f} >"
        )
