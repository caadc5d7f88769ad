""" This file contains classes produced by diagonalizing and classifying the single-excitation spectrum."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .hamiltonian import HamiltonianMatrix


class StateClass(str, Enum):
    PROPAGATING = "propagating"
    LOWER_BOC = "lower_boc"
    UPPER_BOC = "upper_boc"
    BIC = "bic"
    EXTRA = "extra"


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Full eigen-decomposition of a HamiltonianMatrix.

    Columns of `states` are the eigenvectors in the [atom, sites] basis, with
    energies ascending. Each column's global phase is fixed so that its atom
    component (or, when that vanishes, its largest component) is real-positive.
    """

    energies: np.ndarray
    states: np.ndarray
    hamiltonian: HamiltonianMatrix

    def __post_init__(self):
        self.energies.setflags(write=False)
        self.states.setflags(write=False)

    @property
    def params(self):
        return self.hamiltonian.params

    @property
    def lattice(self):
        return self.hamiltonian.lattice

    def __len__(self) -> int:
        return self.energies.shape[0]

    def state(self, index: int) -> np.ndarray:
        return self.states[:, index]

    def residuals(self) -> np.ndarray:
        """||H v_n - E_n v_n|| for every eigenpair."""
        return np.linalg.norm(self.hamiltonian.matrix @ self.states - self.states * self.energies, axis=0)

    def orthonormality_error(self) -> float:
        """max |<v_m|v_n> - delta_mn|."""
        gram = self.states.conj().T @ self.states
        return float(np.max(np.abs(gram - np.eye(len(self)))))

    def atom_weights(self) -> np.ndarray:
        return np.abs(self.states[0, :]) ** 2

    def photon_weights(self, start: Optional[int] = None, stop: Optional[int] = None) -> np.ndarray:
        """Photon weight on absolute chain sites [start, stop] (inclusive), the whole chain by default."""
        start = 0 if start is None else max(start, 0)
        stop = self.lattice.total_sites - 1 if stop is None else min(stop, self.lattice.total_sites - 1)
        return np.sum(np.abs(self.states[1 + start : 2 + stop, :]) ** 2, axis=0)

    def project(self, state: np.ndarray) -> np.ndarray:
        """Overlaps <v_n|psi> of a state with every eigenvector."""
        return self.states.conj().T @ state

    def __repr__(self) -> str:
        return (
            f"< giantbic.EigenDecomposition | states: {len(self)} "
            f"| E_min: {self.energies[0]:.6g} | E_max: {self.energies[-1]:.6g} >"
        )


@dataclass(frozen=True, eq=False)
class BoundState:
    index: int
    energy: float
    state: np.ndarray

    def __repr__(self) -> str:
        return f"< giantbic.BoundState | index: {self.index} | energy: {self.energy:.12g} >"


@dataclass(frozen=True)
class ClassificationRow:
    """One eigenstate's entry in the classification table."""

    index: int
    energy: float
    state_class: StateClass
    atom_weight: float
    photon_weight_in_span: float
    localization: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "energy": self.energy,
            "class": self.state_class.value,
            "atom_weight": self.atom_weight,
            "photon_weight_in_span": self.photon_weight_in_span,
        }


@dataclass(frozen=True, eq=False)
class BoundStateSet:
    """Bound states found in a decomposition: at most one BIC and one BOC per side."""

    lower_boc: Optional[BoundState]
    upper_boc: Optional[BoundState]
    bic: Optional[BoundState]
    table: Tuple[ClassificationRow, ...]
    warnings: Tuple[str, ...] = field(default=())

    def missing(self) -> List[str]:
        names = ("lower_boc", "bic", "upper_boc")
        return [name for name in names if getattr(self, name) is None]

    @property
    def is_complete(self) -> bool:
        return not self.missing()

    def to_dict(self) -> Dict[str, Any]:
        def _entry(bound: Optional[BoundState]):
            return None if bound is None else {"index": bound.index, "energy": bound.energy}

        return {
            "lower_boc": _entry(self.lower_boc),
            "bic": _entry(self.bic),
            "upper_boc": _entry(self.upper_boc),
            "warnings": list(self.warnings),
        }

    def __repr__(self) -> str:
        def _energy(bound: Optional[BoundState]) -> str:
            return "absent" if bound is None else f"{bound.energy:.10g}"

        return (
            f"< giantbic.BoundStateSet | lower_boc: {_energy(self.lower_boc)} | bic: {_energy(self.bic)} "
            f"| upper_boc: {_energy(self.upper_boc)} >"
        )


@dataclass(frozen=True)
class BOCRoot:
    """Root of the bound state equation outside the band."""

    energy: float
    side: str

    def __repr__(self) -> str:
        return f"< giantbic.BOCRoot | side: {self.side} | energy: {self.energy:.15g} >"


@dataclass(frozen=True, eq=False)
class MomentumProfile:
    """Orthonormal discrete Fourier transform of the photon amplitudes, k ascending in [-pi, pi)."""

    k: np.ndarray
    amplitudes: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def peak_momentum(self) -> float:
        return float(self.k[np.argmax(self.weights)])
