import math

import numpy as np
import pytest

from giantbic.base_classes.beats import FrequencySpectrum
from giantbic.utils.beats import detect_peaks, fft_spectrum, match_beats, observable_series, settle
from giantbic.utils.evolution import bound_state_projection

N_SAMPLES = 1024
DT = 0.1
TONE_BIN = 50


def _tone(bin_index: int = TONE_BIN, amplitude: float = 1.0) -> np.ndarray:
    omega = 2 * math.pi * bin_index / (N_SAMPLES * DT)
    return amplitude * np.cos(omega * DT * np.arange(N_SAMPLES))


def _manual_spectrum(magnitudes) -> FrequencySpectrum:
    magnitudes = np.asarray(magnitudes, dtype=float)
    return FrequencySpectrum(np.arange(magnitudes.shape[0], dtype=float), magnitudes, 1.0, 2 * magnitudes.shape[0], 0.0)


def test_frequency_grid():
    spectrum = fft_spectrum(_tone(), DT)
    assert spectrum.n_samples == N_SAMPLES
    assert spectrum.frequencies.shape == (N_SAMPLES // 2 + 1,)
    assert spectrum.resolution == pytest.approx(2 * math.pi / (N_SAMPLES * DT))
    assert spectrum.frequencies[-1] == pytest.approx(math.pi / DT)


def test_single_tone():
    spectrum = fft_spectrum(_tone(), DT)
    report = detect_peaks(spectrum, 0.05)
    assert len(report.peaks) == 1
    assert report.peaks[0].index == TONE_BIN
    assert report.peaks[0].frequency == pytest.approx(TONE_BIN * spectrum.resolution)
    assert report.peaks[0].magnitude == pytest.approx(N_SAMPLES / 2)


def test_tone_in_noise():
    rng = np.random.default_rng(7)
    series = _tone() + 0.01 * rng.standard_normal(N_SAMPLES)
    report = detect_peaks(fft_spectrum(series, DT), 0.05)
    assert len(report.peaks) == 1
    assert report.peaks[0].index == TONE_BIN


def test_random_tones_within_one_bin():
    rng = np.random.default_rng(5)
    times = DT * np.arange(N_SAMPLES)
    for omega in rng.uniform(0.1, 5.0, 20):
        spectrum = fft_spectrum(np.cos(omega * times), DT)
        report = detect_peaks(spectrum, 0.05)
        assert abs(report.peaks[0].frequency - omega) <= spectrum.resolution


def test_times_instead_of_dt():
    times = DT * np.arange(N_SAMPLES)
    spectrum = fft_spectrum(_tone(), times=times)
    assert spectrum.resolution == pytest.approx(2 * math.pi / (N_SAMPLES * DT))


@pytest.mark.parametrize("n", [300, 301])
def test_parseval(n):
    rng = np.random.default_rng(n)
    series = rng.standard_normal(n)
    spectrum = fft_spectrum(series, DT)
    centered = series - np.mean(series)
    assert spectrum.total_power() == pytest.approx(float(np.sum(centered**2)), rel=1e-10)


def test_constant_series_has_no_peaks():
    report = detect_peaks(fft_spectrum(np.full(N_SAMPLES, 0.3), DT), 0.05)
    assert report.peaks == ()


def test_plateau_reports_lowest_bin():
    magnitudes = np.zeros(32)
    magnitudes[[6, 7, 8]] = 5.0
    magnitudes[[5, 9]] = 1.0
    report = detect_peaks(_manual_spectrum(magnitudes), 0.05)
    assert [peak.index for peak in report.peaks] == [6]


def test_min_separation():
    magnitudes = np.zeros(64)
    magnitudes[10] = 10.0
    magnitudes[14] = 6.0
    magnitudes[40] = 8.0
    spectrum = _manual_spectrum(magnitudes)
    assert [peak.index for peak in detect_peaks(spectrum, 0.05).peaks] == [10, 40, 14]
    assert [peak.index for peak in detect_peaks(spectrum, 0.05, 12).peaks] == [10, 40]


def test_threshold_filters_small_peaks():
    magnitudes = np.zeros(64)
    magnitudes[10] = 10.0
    magnitudes[30] = 0.4
    assert [peak.index for peak in detect_peaks(_manual_spectrum(magnitudes), 0.05).peaks] == [10]


def test_bad_inputs():
    spectrum = fft_spectrum(_tone(), DT)
    with pytest.raises(Exception) as e_info:
        detect_peaks(spectrum, 1.5)
    assert str(e_info.value) == "InputError: rel_threshold must lie in (0, 1), got 1.5"

    with pytest.raises(Exception) as e_info:
        fft_spectrum(np.ones(100), DT)
    assert str(e_info.value) == "InputError: need at least 256 samples, got 100"

    with pytest.raises(Exception) as e_info:
        fft_spectrum(_tone())
    assert str(e_info.value) == "InputError: a positive sampling step dt (or uniform times) is required"

    times = DT * np.arange(N_SAMPLES)
    times[3] += 0.01
    with pytest.raises(Exception) as e_info:
        fft_spectrum(_tone(), times=times)
    assert str(e_info.value) == "InputError: times must be strictly increasing with uniform spacing"


def test_match_beats_with_mapping():
    spectrum = fft_spectrum(_tone(), DT)
    omega = TONE_BIN * spectrum.resolution
    report = detect_peaks(spectrum, 0.05)

    matched = match_beats(report, {"delta_L": omega + 0.5 * spectrum.resolution, "delta_U": 3.0})
    assert matched.labels == ["delta_L"]
    assert matched.matches[0].deviation == pytest.approx(0.5 * spectrum.resolution)

    unmatched = match_beats(report, {"delta_L": omega + 5 * spectrum.resolution})
    assert unmatched.labels == []
    assert unmatched.unmatched == [report.peaks[0]]
    assert unmatched.to_records() == [{"frequency": report.peaks[0].frequency, "magnitude": report.peaks[0].magnitude}]


def test_observables(strong_trajectory):
    assert np.array_equal(observable_series(strong_trajectory, "P_e"), strong_trajectory.atom_population)
    assert np.array_equal(observable_series(strong_trajectory, "beta_1"), strong_trajectory.intensity(1))
    with pytest.raises(Exception) as e_info:
        observable_series(strong_trajectory, "P_g")
    assert str(e_info.value) == "InputError: unknown observable 'P_g'. Options: ['P_e', 'beta_<j>']"


def test_settle(strong_trajectory):
    settled = settle(strong_trajectory, 25.0)
    assert settled.times[0] >= 25.0
    assert settled.times[-1] == pytest.approx(400.0)
    with pytest.raises(Exception) as e_info:
        settle(strong_trajectory, 390.0)
    assert str(e_info.value) == "InputError: settle_time=390.0 leaves fewer than 256 samples"


@pytest.fixture(scope="module")
def strong_beats(strong, strong_trajectory):
    decomp, bound_states = strong
    model = bound_state_projection(decomp, "atom", bound_states, (0, 1, 3))
    settled = settle(strong_trajectory, 25.0)

    def analyse(observable: str):
        spectrum = fft_spectrum(observable_series(settled, observable), settled.dt)
        return match_beats(detect_peaks(spectrum, 0.05, 12), model)

    return analyse


def test_atom_population_beats(strong_beats):
    report = strong_beats("P_e")
    assert len(report.peaks) == 3
    assert {match.label for match in report.matches[:3]} == {"delta_L", "delta_U", "delta_L+delta_U"}


def test_site_one_beats(strong_beats):
    report = strong_beats("beta_1")
    assert len(report.peaks) == 3
    assert {match.label for match in report.matches[:3]} == {"delta_L", "delta_U", "delta_L+delta_U"}


def test_leg_site_has_single_beat(strong_beats):
    # the BIC vanishes on the leg sites
    report = strong_beats("beta_0")
    assert [match.label for match in report.matches] == ["delta_L+delta_U"]


def test_reports_are_reproducible(strong_beats):
    first, second = strong_beats("P_e"), strong_beats("P_e")
    assert first.to_records() == second.to_records()
    assert [peak.index for peak in first.peaks] == [peak.index for peak in second.peaks]
