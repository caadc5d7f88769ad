"""This file contains the run configuration schema and its flat key-per-line representation."""
from __future__ import annotations

from typing import Any, Dict, List, Literal, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ..configs import (
    DEFAULT_DT,
    DEFAULT_INITIAL_STATE,
    DEFAULT_MIN_SEPARATION,
    DEFAULT_REL_THRESHOLD,
    DEFAULT_SETTLE_TIME,
    DEFAULT_T_MAX,
    DEFAULT_TOTAL_SITES,
    DEFAULT_TRACKED_SITES,
    LOCALIZATION_THRESHOLD,
    LOCALIZATION_WINDOW,
    TOL_EDGE,
)
from ..utils.functions import parse_list, parse_quantity
from .system import Lattice, SystemParams

SWEEPABLE: Dict[str, str] = {
    "system.omega_atom": "xi",
    "system.omega_cavity": "xi",
    "system.hopping": "xi",
    "system.coupling": "xi",
    "system.phase": "pi",
    "system.leg_separation": "int",
    "lattice.total_sites": "int",
}


def _quantity(value: Any, unit: str, scale: float = 1.0) -> float:
    # pydantic only reports ValueError and AssertionError as field errors
    try:
        return parse_quantity(value, unit, scale)
    except TypeError as error:
        raise ValueError(str(error)) from error


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SystemSection(_Section):
    hopping: float = Field(default=1.0, gt=0)
    omega_atom: float
    omega_cavity: float = 0.0
    coupling: float = Field(default=0.1, ge=0)
    leg_separation: int = Field(default=6, ge=1)
    phase: float = 0.0

    @field_validator("hopping", mode="before")
    @classmethod
    def _parse_hopping(cls, value):
        return _quantity(value, "xi")

    @field_validator("omega_atom", "omega_cavity", "coupling", mode="before")
    @classmethod
    def _parse_energy(cls, value, info: ValidationInfo):
        return _quantity(value, "xi", info.data.get("hopping", 1.0))

    @field_validator("phase", mode="before")
    @classmethod
    def _parse_phase(cls, value):
        return _quantity(value, "pi")


class LatticeSection(_Section):
    total_sites: int = Field(default=DEFAULT_TOTAL_SITES, ge=2)
    leg0_index: Optional[int] = Field(default=None, ge=0)
    boundary: Literal["hard-wall"] = "hard-wall"


class DynamicsSection(_Section):
    dt: float = Field(default=DEFAULT_DT, gt=0)
    t_max: float = Field(default=DEFAULT_T_MAX, gt=0)
    tracked_sites: List[int] = Field(default_factory=lambda: list(DEFAULT_TRACKED_SITES))
    initial: str = DEFAULT_INITIAL_STATE

    @field_validator("tracked_sites", mode="before")
    @classmethod
    def _parse_sites(cls, value):
        try:
            return [int(item) for item in parse_list(value)]
        except TypeError as error:
            raise ValueError(str(error)) from error


class AnalysisSection(_Section):
    rel_threshold: float = Field(default=DEFAULT_REL_THRESHOLD, gt=0, lt=1)
    min_separation: int = Field(default=DEFAULT_MIN_SEPARATION, ge=0)
    settle_time: float = Field(default=DEFAULT_SETTLE_TIME, ge=0)
    tol_edge: float = Field(default=TOL_EDGE, gt=0)
    localization: float = Field(default=LOCALIZATION_THRESHOLD, gt=0, lt=1)
    window: int = Field(default=LOCALIZATION_WINDOW, ge=0)


class SweepSection(_Section):
    parameter: str
    values: List[float]
    subcommand: Literal["spectrum", "bic", "boc", "dynamics", "beats"] = "spectrum"

    @field_validator("parameter")
    @classmethod
    def _check_parameter(cls, value):
        if value not in SWEEPABLE:
            raise ValueError(f"Invalid option for parameter. Options: {list(SWEEPABLE)}")
        return value

    @field_validator("values", mode="before")
    @classmethod
    def _parse_values(cls, value, info: ValidationInfo):
        kind = SWEEPABLE.get(info.data.get("parameter"), "xi")
        try:
            items = parse_list(value)
        except TypeError as error:
            raise ValueError(str(error)) from error
        if not items:
            raise ValueError("at least one sweep value is required")
        if kind == "int":
            return [int(item) for item in items]
        return [_quantity(item, kind) for item in items]


class OutputSection(_Section):
    directory: str = "results"
    format: Literal["csv", "json"] = "csv"


class RunConfig(BaseModel):
    """Validated run configuration. Every section rejects unknown keys."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    system: SystemSection
    lattice: LatticeSection = Field(default_factory=LatticeSection)
    dynamics: DynamicsSection = Field(default_factory=DynamicsSection)
    analysis: AnalysisSection = Field(default_factory=AnalysisSection)
    sweep: Optional[SweepSection] = None
    output: OutputSection = Field(default_factory=OutputSection)
    seed: int = 0

    @model_validator(mode="before")
    @classmethod
    def _scale_sweep_energies(cls, data):
        # xi-tagged sweep values use system.hopping, as the system section does
        if not isinstance(data, dict) or not isinstance(data.get("sweep"), dict):
            return data
        sweep, system = data["sweep"], data.get("system")
        parameter = sweep.get("parameter")
        if SWEEPABLE.get(parameter) != "xi" or parameter == "system.hopping" or not isinstance(system, dict):
            return data
        try:
            hopping = _quantity(system.get("hopping", 1.0), "xi")
            values = [_quantity(item, "xi", hopping) for item in parse_list(sweep.get("values"))]
        except (TypeError, ValueError):
            # left to the field validators to report
            return data
        return {**data, "sweep": {**sweep, "values": values}}

    @classmethod
    def from_flat(cls, values: Mapping[str, Any]) -> "RunConfig":
        """Builds a config from dotted keys such as "system.omega_atom".

        Raises:
            pydantic.ValidationError: Field-level problems, including unknown keys.
        """
        return cls.model_validate(nest(values))

    def system_params(self) -> SystemParams:
        return SystemParams.parse_params(self.system.model_dump())

    def build_lattice(self) -> Lattice:
        section = self.lattice
        if section.leg0_index is None:
            return Lattice.centered(self.system.leg_separation, section.total_sites)
        return Lattice(section.total_sites, section.leg0_index, self.system.leg_separation, section.boundary)

    def with_override(self, parameter: str, value: Any) -> "RunConfig":
        """Copy with one dotted parameter replaced (used by sweeps)."""
        section_name, field_name = parameter.split(".", 1)
        values = self.model_dump()
        values[section_name] = {**values[section_name], field_name: value}
        return RunConfig.model_validate(values)

    def to_flat(self) -> Dict[str, Any]:
        """Snapshot with dotted keys, the inverse of from_flat."""
        flat: Dict[str, Any] = {}
        for name, value in self.model_dump().items():
            if isinstance(value, dict):
                for key, item in value.items():
                    flat[f"{name}.{key}"] = item
            elif value is not None:
                flat[name] = value
        return flat


def nest(values: Mapping[str, Any]) -> Dict[str, Any]:
    """Turns {"system.omega_atom": "-1"} into {"system": {"omega_atom": "-1"}}."""
    nested: Dict[str, Any] = {}
    for key, value in values.items():
        head, _, tail = key.strip().partition(".")
        if not tail:
            nested[head] = value
            continue
        section = nested.setdefault(head, {})
        if isinstance(section, dict):
            section[tail] = value
        else:
            nested[key] = value
    return nested
