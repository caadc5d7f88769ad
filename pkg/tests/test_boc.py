import math

import pytest

from giantbic.utils.boc import (
    boc_energies,
    bound_state_function,
    inner_pole,
    self_energy_integral,
    self_energy_integral_quad,
)
from tests.conftest import CONFIG_A, CONFIG_B, STRONG


def test_roots_match_diagonalization(strong):
    _, bound_states = strong
    roots = {root.side: root.energy for root in boc_energies(STRONG)}
    assert roots["lower"] == pytest.approx(bound_states.lower_boc.energy, abs=1e-6)
    assert roots["upper"] == pytest.approx(bound_states.upper_boc.energy, abs=1e-6)


def test_roots_solve_the_equation():
    residual = bound_state_function(STRONG)
    for root in boc_energies(STRONG):
        assert abs(residual(root.energy)) < 1e-9


@pytest.mark.parametrize(
    "params",
    [CONFIG_A, CONFIG_B, STRONG, CONFIG_A.replace(phase=0.7, leg_separation=5), CONFIG_A.replace(omega_cavity=0.3, hopping=0.8)],
)
def test_closed_form_matches_quadrature(params):
    low, high = params.omega_cavity - 2 * params.hopping, params.omega_cavity + 2 * params.hopping
    for energy in (low - 0.05, low - 1.0, high + 0.2, high + 3.0):
        closed = self_energy_integral(energy, params)
        assert self_energy_integral_quad(energy, params) == pytest.approx(closed, rel=1e-9, abs=1e-12)


def test_inner_pole_inside_unit_circle():
    for energy in (-2.5, -2.0001, 2.0001, 4.0):
        assert abs(inner_pole(energy, CONFIG_A)) < 1.0


@pytest.mark.parametrize("coupling", [0.3, 0.6])
def test_roots_symmetric_about_cavity(coupling):
    params = CONFIG_A.replace(omega_atom=0.0, coupling=coupling, leg_separation=4, phase=0.0)
    roots = {root.side: root.energy for root in boc_energies(params)}
    assert roots["lower"] == pytest.approx(-roots["upper"], abs=1e-10)


def test_threshold_at_phase_pi():
    assert boc_energies(CONFIG_A) == []
    assert [root.side for root in boc_energies(CONFIG_A.replace(coupling=0.5))] == ["lower"]
    assert [root.side for root in boc_energies(STRONG)] == ["lower", "upper"]


def test_broken_condition_binds_on_both_sides():
    roots = boc_energies(CONFIG_A.replace(phase=0.0))
    assert [root.side for root in roots] == ["lower", "upper"]
    assert roots[0].energy < -2.0 < 2.0 < roots[1].energy


def test_detuned_atom_outside_band():
    params = CONFIG_A.replace(omega_atom=-5.0, phase=0.0)
    lower = [root for root in boc_energies(params) if root.side == "lower"]
    assert len(lower) == 1
    assert lower[0].energy == pytest.approx(-5.0, abs=0.05)


def test_zero_coupling():
    with pytest.raises(Exception) as e_info:
        boc_energies(CONFIG_A.replace(coupling=0.0))
    assert str(e_info.value) == "ConfigurationError: system.coupling: bound state roots require g > 0"


def test_in_band_energy():
    with pytest.raises(Exception) as e_info:
        self_energy_integral(1.0, CONFIG_A)
    assert str(e_info.value) == "DomainError: energy=1.0 lies within the closed band [-2.0, 2.0]."


def test_roots_approach_band_edges_as_coupling_vanishes():
    params = CONFIG_A.replace(phase=0.0)
    distances = []
    for coupling in (0.2, 0.1, 0.05):
        roots = boc_energies(params.replace(coupling=coupling))
        assert [root.side for root in roots] == ["lower", "upper"]
        distances.append((-2.0 - roots[0].energy, roots[1].energy - 2.0))
    for (lower, upper), (next_lower, next_upper) in zip(distances, distances[1:]):
        assert 0 < next_lower < lower
        assert 0 < next_upper < upper
