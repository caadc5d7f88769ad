"""FFT of observable time series, peak detection and matching to the bound state detunings."""

import logging
from typing import Mapping, Optional, Union

import numpy as np
from scipy import fft, signal

from ..base_classes.beats import FrequencySpectrum, Peak, PeakMatch, PeakReport
from ..base_classes.dynamics import BoundStateModel, Trajectory
from ..configs import DEFAULT_REL_THRESHOLD, MATCH_BINS, MIN_FFT_SAMPLES
from ..exceptions.dynamics_errors import InputError
from .evolution import check_uniform

logger = logging.getLogger(__name__)


def fft_spectrum(series: np.ndarray, dt: Optional[float] = None, times: Optional[np.ndarray] = None) -> FrequencySpectrum:
    """Rectangular-window magnitude spectrum of a mean-subtracted real series.

    Args:
        series (np.ndarray): Real samples.
        dt (float, optional): Sampling step. Required unless times is given.
        times (np.ndarray, optional): Sample times, checked for uniform spacing.

    Raises:
        InputError: Fewer than MIN_FFT_SAMPLES samples, no sampling step, or non-uniform times.

    Returns:
        FrequencySpectrum: Angular frequencies 0 .. pi/dt with resolution 2 pi / (n dt).
    """
    series = np.asarray(series, dtype=float)
    if times is not None:
        if np.asarray(times).shape != series.shape:
            raise InputError("times and series must have the same length")
        dt = check_uniform(times)
    if dt is None or not dt > 0:
        raise InputError("a positive sampling step dt (or uniform times) is required")
    n = series.shape[0]
    if n < MIN_FFT_SAMPLES:
        raise InputError(f"need at least {MIN_FFT_SAMPLES} samples, got {n}")

    centered = series - np.mean(series)
    magnitudes = np.abs(fft.rfft(centered))
    frequencies = 2 * np.pi * fft.rfftfreq(n, dt)
    scale = float(np.max(np.abs(series))) if n else 0.0
    noise_floor = 1e-12 * n * scale
    return FrequencySpectrum(frequencies, magnitudes, 2 * np.pi / (n * dt), n, noise_floor)


def detect_peaks(
    spectrum: FrequencySpectrum, rel_threshold: float = DEFAULT_REL_THRESHOLD, min_separation: int = 0
) -> PeakReport:
    """Local maxima of the spectrum above rel_threshold times the largest magnitude.

    Plateaus report their lowest frequency. With min_separation > 0, of two
    maxima closer than that many bins only the larger survives.

    Raises:
        InputError: rel_threshold outside (0, 1).
    """
    if not 0 < rel_threshold < 1:
        raise InputError(f"rel_threshold must lie in (0, 1), got {rel_threshold!r}")
    magnitudes = spectrum.magnitudes
    if magnitudes.shape[0] < 3:
        return PeakReport((), spectrum.resolution)

    top = float(np.max(magnitudes[1:]))
    threshold = max(rel_threshold * top, spectrum.noise_floor)
    if top <= spectrum.noise_floor:
        return PeakReport((), spectrum.resolution)

    indices, properties = signal.find_peaks(
        magnitudes,
        height=threshold,
        distance=min_separation if min_separation >= 1 else None,
        plateau_size=1,
    )
    peaks = [
        Peak(float(spectrum.frequencies[edge]), float(magnitudes[edge]), int(edge))
        for edge in properties["left_edges"]
    ]
    peaks.sort(key=lambda peak: (-peak.magnitude, peak.frequency))
    logger.debug("Detected %d peaks above %.3e", len(peaks), threshold)
    return PeakReport(tuple(peaks), spectrum.resolution)


def match_beats(report: PeakReport, model: Union[BoundStateModel, Mapping[str, float]]) -> PeakReport:
    """Labels every peak with the nearest of delta_L, delta_U and delta_L + delta_U within MATCH_BINS bins.

    Args:
        report (PeakReport): Output of detect_peaks.
        model (BoundStateModel | Mapping[str, float]): Bound state model, or the beat frequencies directly.

    Returns:
        PeakReport: Same peaks with matches; peaks too far from every target keep label None.
    """
    targets = dict(getattr(model, "beat_frequencies", model))
    tolerance = MATCH_BINS * report.resolution
    matches = []
    for peak in report.peaks:
        label, target = min(targets.items(), key=lambda item: abs(item[1] - peak.frequency))
        deviation = abs(target - peak.frequency)
        if deviation <= tolerance:
            matches.append(PeakMatch(peak, label, deviation))
        else:
            logger.info("Peak at %.6g is not a bound state beat", peak.frequency)
            matches.append(PeakMatch(peak))
    return PeakReport(report.peaks, report.resolution, tuple(matches))


def observable_series(trajectory: Trajectory, observable: str) -> np.ndarray:
    """Samples of "P_e" or of a site intensity "beta_<j>" (|beta_j|^2)."""
    # intensities, not |beta_j|: the modulus is not smooth at its zeros and adds harmonics of the beats
    if observable == "P_e":
        return trajectory.atom_population
    if observable.startswith("beta_"):
        return trajectory.intensity(int(observable.split("_", 1)[1]))
    raise InputError(f"unknown observable '{observable}'. Options: ['P_e', 'beta_<j>']")


def settle(trajectory: Trajectory, settle_time: float) -> Trajectory:
    """Drops the samples before settle_time, where propagating modes still contribute."""
    settled = trajectory.window(settle_time)
    if settled.times.shape[0] < MIN_FFT_SAMPLES:
        raise InputError(f"settle_time={settle_time!r} leaves fewer than {MIN_FFT_SAMPLES} samples")
    return settled
