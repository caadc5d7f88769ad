import pytest

from giantbic.base_classes.run_config import RunConfig
from giantbic.utils.selfcheck import (
    calibrate_long_time,
    check_boc_draws,
    check_dispersion_draws,
    check_dynamics,
    check_self_energy_draws,
)

STRONG_FLAT = {
    "system.omega_atom": "-1xi",
    "system.coupling": "1.1",
    "system.leg_separation": "6",
    "system.phase": "pi",
}


def test_long_time_calibration(strong):
    decomp, bound_states = strong
    check = calibrate_long_time(decomp, bound_states, RunConfig.from_flat(STRONG_FLAT))
    assert check.name == "long_time_rms"
    assert check.passed
    assert check.value < 1e-2
    assert check.detail == "window [200, 400]"


def test_long_time_calibration_needs_long_run(strong):
    decomp, bound_states = strong
    config = RunConfig.from_flat({**STRONG_FLAT, "dynamics.t_max": "150"})
    check = calibrate_long_time(decomp, bound_states, config)
    assert check.skipped
    assert check.detail == "run ends at t=150, before the window start 200"


def test_long_time_calibration_without_bocs(config_a):
    decomp, bound_states = config_a
    check = calibrate_long_time(decomp, bound_states, RunConfig.from_flat({**STRONG_FLAT, "system.coupling": "0.1"}))
    assert check.skipped
    assert check.detail == "ModelUnavailableError: missing bound states: lower_boc, upper_boc"


def test_dynamics_invariants(strong):
    decomp, _ = strong
    config = RunConfig.from_flat({**STRONG_FLAT, "dynamics.t_max": "100", "dynamics.dt": "0.5"})
    checks = {check.name: check for check in check_dynamics(decomp, config)}
    assert sorted(checks) == ["causality", "completeness", "energy_conservation", "norm_conservation", "semigroup"]
    assert all(check.passed for check in checks.values())
    assert checks["causality"].value < 1e-6


def test_random_dispersion():
    (check,) = check_dispersion_draws(seed=1)
    assert check.passed
    assert check.detail == "100 draws"


def test_random_self_energy():
    (check,) = check_self_energy_draws(seed=2)
    assert check.passed
    assert check.value <= 1e-9


def test_random_boc_roots():
    (check,) = check_boc_draws(seed=3)
    assert check.passed
    assert check.value <= 1e-6
    assert check.detail.endswith("over 20 draws")
