"""This file contains errors raised while diagonalizing and classifying spectra."""

from typing import List


class InternalError(Exception):
    """Error thrown when a numerical routine receives input that should never occur."""

    def __init__(self, reason: str):
        super().__init__()
        self.reason = reason

    def __str__(self):
        return f"InternalError: {self.reason}"


class DomainError(Exception):
    """Error thrown when the bound state integral is requested inside the band."""

    def __init__(self, energy: float, band: tuple):
        super().__init__()
        self.energy = energy
        self.band = band

    def __str__(self):
        low, high = self.band
        return f"DomainError: energy={self.energy!r} lies within the closed band [{low!r}, {high!r}]."


class ClassificationError(Exception):
    """Error thrown when more than one in-band eigenstate passes the localization test."""

    def __init__(self, energies: List[float], ratios: List[float]):
        super().__init__()
        self.energies = list(energies)
        self.ratios = list(ratios)

    def __str__(self):
        pairs = ", ".join(f"E={e:.12g} (ratio {r:.6f})" for e, r in zip(self.energies, self.ratios))
        return f"ClassificationError: ambiguous in-band localized states: {pairs}"
