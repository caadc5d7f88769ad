import math

import pytest

from giantbic.base_classes.run_config import RunConfig
from giantbic.exceptions.local_errors import ValidationFailedError
from giantbic.utils.validation import load_config, validate

CONFIG_A_FLAT = {
    "system.omega_atom": "-1xi",
    "system.omega_cavity": "0",
    "system.hopping": "1",
    "system.coupling": "0.1",
    "system.leg_separation": "6",
    "system.phase": "pi",
    "lattice.total_sites": "201",
}

CONFIG_A_FILE = """# Config A: BIC at Omega = -xi
system.omega_atom = -1xi
system.coupling = 0.1
system.leg_separation = 6
system.phase = pi

lattice.total_sites = 201
dynamics.tracked_sites = 0, 1, 3
output.format = json
"""


def _flat(**changes):
    values = dict(CONFIG_A_FLAT)
    values.update({key.replace("__", "."): value for key, value in changes.items()})
    return values


def test_from_flat_units():
    config = RunConfig.from_flat(
        {
            "system.hopping": "2",
            "system.omega_atom": "-sqrt(2)xi",
            "system.phase": "3pi/4",
            "system.leg_separation": "12",
            "dynamics.tracked_sites": "0, 1, 3",
        }
    )
    assert config.system.omega_atom == pytest.approx(-2 * math.sqrt(2))
    assert config.system.phase == pytest.approx(0.75 * math.pi)
    assert config.system.leg_separation == 12
    assert config.dynamics.tracked_sites == [0, 1, 3]
    assert config.analysis.min_separation == 12
    assert config.seed == 0


def test_system_params_and_lattice():
    config = RunConfig.from_flat(CONFIG_A_FLAT)
    params = config.system_params()
    assert params.omega_atom == -1.0
    assert params.phase == pytest.approx(math.pi)
    lattice = config.build_lattice()
    assert lattice.total_sites == 201
    assert lattice.leg0_index == 97
    assert lattice.legN_index == 103


def test_valid_config():
    report = validate(CONFIG_A_FLAT, "bic")
    assert report.ok
    assert report.warnings == ()
    assert report.config.system.coupling == 0.1


def test_unknown_key():
    report = validate(_flat(system__colour="red"), "spectrum")
    assert not report.ok
    assert report.config is None
    assert [violation.to_dict() for violation in report.violations] == [
        {"field": "system.colour", "module": "core-model", "message": "unknown key"}
    ]


def test_missing_value():
    report = validate(_flat(analysis__settle_time=None), "beats")
    assert report.fields() == ["analysis.settle_time"]
    assert report.violations[0].message == "missing value"
    assert report.violations[0].module == "beat-analysis"


def test_wrong_unit_tag():
    report = validate(_flat(system__phase="1xi"), "spectrum")
    assert report.fields() == ["system.phase"]
    assert report.violations[0].message == "Quantity '1xi' carries unit 'xi', expected 'pi'"


def test_out_of_band():
    values = _flat(system__omega_atom="-3")
    assert validate(values, "spectrum").ok
    assert validate(values, "boc").ok

    report = validate(values, "bic")
    assert report.fields() == ["system.omega_atom"]
    assert report.violations[0].message == "must lie strictly inside the band (-2.0, 2.0) for 'bic'"
    assert not validate(values, "beats").ok


def test_uncoupled_boc():
    report = validate(_flat(system__coupling="0"), "boc")
    assert report.fields() == ["system.coupling"]
    assert report.violations[0].message == "must be > 0 for 'boc'"
    assert validate(_flat(system__coupling="0"), "spectrum").ok


def test_lattice_checks():
    report = validate(_flat(lattice__leg0_index="198"), "spectrum")
    assert report.fields() == ["lattice.leg0_index"]
    assert report.violations[0].module == "core-model"

    report = validate(_flat(lattice__leg0_index="5"), "spectrum")
    assert report.ok
    assert len(report.warnings) == 1
    assert report.warnings[0].startswith("legs are off-center")


def test_sweep_section():
    report = validate(CONFIG_A_FLAT, "sweep")
    assert report.fields() == ["sweep"]
    assert report.violations[0].message == "a [sweep] section is required for 'sweep'"

    report = validate(_flat(sweep__parameter="system.phase", sweep__values="0, pi/4, pi/2"), "sweep")
    assert report.ok
    assert report.config.sweep.values == pytest.approx([0.0, math.pi / 4, math.pi / 2])
    assert report.config.sweep.subcommand == "spectrum"

    report = validate(_flat(sweep__parameter="system.leg_separation", sweep__values="4, 6"), "sweep")
    assert report.config.sweep.values == [4, 6]

    report = validate(_flat(sweep__parameter="system.colour", sweep__values="1"), "sweep")
    assert report.fields() == ["sweep.parameter"]
    assert report.violations[0].message.startswith("Invalid option for parameter. Options: ")


def test_sweep_energies_follow_hopping():
    values = _flat(system__hopping="0.5", sweep__parameter="system.omega_atom", sweep__values="-1xi, 0.5xi, 0.3")
    report = validate(values, "sweep")
    assert report.ok
    assert report.config.system.omega_atom == -0.5
    assert report.config.sweep.values == pytest.approx([-0.5, 0.25, 0.3])

    report = validate(_flat(system__hopping="2", sweep__parameter="system.hopping", sweep__values="1xi, 0.5"), "sweep")
    assert report.config.sweep.values == [1.0, 0.5]


def test_sweep_value_outside_lattice():
    values = _flat(sweep__parameter="system.leg_separation", sweep__values="6, 250")
    report = validate(values, "sweep")
    assert report.fields() == ["lattice.total_sites"]
    assert report.violations[0].message.endswith("(sweep value 250)")


def test_unknown_subcommand():
    with pytest.raises(Exception) as e_info:
        validate(CONFIG_A_FLAT, "plot")
    assert str(e_info.value).startswith("Invalid option for subcommand. Options: ")


def test_validation_failed_error():
    report = validate(_flat(system__coupling="0"), "boc")
    error = ValidationFailedError(report.violations)
    assert str(error) == "ValidationFailedError:\n  [core-model] system.coupling: must be > 0 for 'boc'"


def test_with_override():
    config = RunConfig.from_flat(CONFIG_A_FLAT)
    stronger = config.with_override("system.coupling", 1.1)
    assert stronger.system.coupling == 1.1
    assert config.system.coupling == 0.1

    wider = config.with_override("system.leg_separation", 7.0)
    assert wider.system.leg_separation == 7
    assert isinstance(wider.system.leg_separation, int)


def test_to_flat():
    config = RunConfig.from_flat(CONFIG_A_FLAT)
    flat = config.to_flat()
    assert flat["system.omega_atom"] == -1.0
    assert flat["lattice.total_sites"] == 201
    assert flat["seed"] == 0
    assert "sweep" not in flat
    assert RunConfig.from_flat(flat) == config


def test_load_config(tmp_path):
    path = tmp_path / "config_a.env"
    path.write_text(CONFIG_A_FILE)
    values = load_config(str(path))
    assert values["system.omega_atom"] == "-1xi"
    assert values["dynamics.tracked_sites"] == "0, 1, 3"

    report = validate(values, "bic")
    assert report.ok
    assert report.config.output.format == "json"
    assert report.config.dynamics.tracked_sites == [0, 1, 3]


def test_load_config_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "config_a.env"
    path.write_text(CONFIG_A_FILE)
    monkeypatch.setenv("GIANTBIC-CONFIG", str(path))
    assert load_config()["system.phase"] == "pi"


def test_config_not_found(tmp_path, monkeypatch):
    monkeypatch.delenv("GIANTBIC-CONFIG", raising=False)
    with pytest.raises(Exception) as e_info:
        load_config()
    assert "No configuration supplied" in str(e_info.value)

    missing = str(tmp_path / "missing.env")
    with pytest.raises(Exception) as e_info:
        load_config(missing)
    assert str(e_info.value) == f"ConfigNotFoundError: Unable to read configuration file '{missing}'."
