""" This file contains the single-excitation Hamiltonian container."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .system import Lattice, SystemParams


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Dense Hamiltonian in the basis [atom excited, site 0, ..., site N_c - 1]."""

    matrix: np.ndarray
    params: SystemParams
    lattice: Lattice

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_error(self) -> float:
        """max |H - H^dagger| over all entries."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def off_tridiagonal_nonzeros(self) -> int:
        """Number of nonzero entries outside the main, first upper and first lower diagonals of the chain block."""
        mask = np.abs(np.subtract.outer(np.arange(self.dimension), np.arange(self.dimension))) > 1
        mask[0, 1] = mask[1, 0] = True
        return int(np.count_nonzero(self.matrix[mask]))

    def __repr__(self) -> str:
        return f"< giantbic.HamiltonianMatrix | dimension: {self.dimension} | {self.params!r} >"
