""" This file contains classes for frequency spectra and beat peak reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class FrequencySpectrum:
    """One-sided magnitude spectrum |X(omega)| of a mean-subtracted series, omega in [0, pi/dt]."""

    frequencies: np.ndarray
    magnitudes: np.ndarray
    resolution: float
    n_samples: int
    noise_floor: float = 0.0

    def total_power(self) -> float:
        """sum_t |x_t|^2 recovered from the one-sided spectrum (Parseval)."""
        power = self.magnitudes**2
        weights = np.full(power.shape[0], 2.0)
        weights[0] = 1.0
        if self.n_samples % 2 == 0:
            weights[-1] = 1.0
        return float(np.sum(weights * power) / self.n_samples)

    def columns(self) -> Dict[str, np.ndarray]:
        return {"omega": self.frequencies, "magnitude": self.magnitudes}

    def __repr__(self) -> str:
        return (
            f"< giantbic.FrequencySpectrum | bins: {self.frequencies.shape[0]} "
            f"| resolution: {self.resolution:.6g} | omega_max: {self.frequencies[-1]:.6g} >"
        )


@dataclass(frozen=True)
class Peak:
    frequency: float
    magnitude: float
    index: int


@dataclass(frozen=True)
class PeakMatch:
    peak: Peak
    label: Optional[str] = None
    deviation: Optional[float] = None

    @property
    def matched(self) -> bool:
        return self.label is not None


@dataclass(frozen=True)
class PeakReport:
    """Peaks sorted by magnitude (descending) and, once matched, their beat labels."""

    peaks: Tuple[Peak, ...]
    resolution: float
    matches: Tuple[PeakMatch, ...] = field(default=())

    @property
    def labels(self) -> List[str]:
        return [match.label for match in self.matches if match.matched]

    @property
    def unmatched(self) -> List[Peak]:
        return [match.peak for match in self.matches if not match.matched]

    def to_records(self) -> List[Dict[str, Any]]:
        if not self.matches:
            return [{"frequency": peak.frequency, "magnitude": peak.magnitude} for peak in self.peaks]
        records = []
        for match in self.matches:
            record = {"frequency": match.peak.frequency, "magnitude": match.peak.magnitude}
            if match.matched:
                record["label"] = match.label
                record["deviation"] = match.deviation
            records.append(record)
        return records

    def __repr__(self) -> str:
        return f"< giantbic.PeakReport | peaks: {len(self.peaks)} | labels: {self.labels} >"
