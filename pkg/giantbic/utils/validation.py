"""Loading and validating run configurations."""

import logging
import os
from typing import Any, Dict, List, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import ValidationError

from ..base_classes.run_config import RunConfig
from ..base_classes.validation import ValidationReport, Violation
from ..configs import BIC_REGIME_SUBCOMMANDS, CONFIG_ENV_NAME, SUBCOMMANDS
from ..exceptions.local_errors import ConfigNotFoundError
from ..exceptions.model_errors import ConfigurationError

logger = logging.getLogger(__name__)

SECTION_MODULES: Dict[str, str] = {
    "system": "core-model",
    "lattice": "core-model",
    "dynamics": "dynamics",
    "analysis": "beat-analysis",
    "sweep": "cli-io",
    "output": "cli-io",
    "seed": "cli-io",
}


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Reads a flat `section.key = value` file.

    Args:
        path (str, optional): Config path. Defaults to the path stored in the GIANTBIC-CONFIG environment variable.

    Raises:
        ConfigNotFoundError: No path given and none in the environment, or the file cannot be read.

    Returns:
        Dict[str, Any]: Raw values keyed by dotted name, in file order.
    """
    if path is None:
        try:
            path = os.environ[CONFIG_ENV_NAME]
        except KeyError:
            raise ConfigNotFoundError() from KeyError

    if not os.path.isfile(path):
        raise ConfigNotFoundError(path)
    try:
        values = dotenv_values(path)
    except (OSError, UnicodeDecodeError) as error:
        raise ConfigNotFoundError(path) from error

    logger.debug("Loaded %d keys from %s", len(values), path)
    return dict(values)


def _module_of(field: str) -> str:
    return SECTION_MODULES.get(field.split(".", 1)[0], "cli-io")


def _pydantic_violations(error: ValidationError) -> List[Violation]:
    violations = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"] if not isinstance(part, int)) or "config"
        message = item["msg"]
        if item["type"] == "extra_forbidden":
            message = "unknown key"
        elif message.startswith("Value error, "):
            message = message[len("Value error, ") :]
        violations.append(Violation(field, _module_of(field), message))
    return violations


def _model_violations(config: RunConfig, subcommand: str) -> List[Violation]:
    violations = []
    try:
        params = config.system_params()
        config.build_lattice()
    except ConfigurationError as error:
        return [Violation(error.field, _module_of(error.field), error.reason)]

    if subcommand in BIC_REGIME_SUBCOMMANDS and not params.in_band:
        violations.append(
            Violation(
                "system.omega_atom",
                "core-model",
                f"must lie strictly inside the band ({params.omega_cavity - 2 * params.hopping!r}, "
                f"{params.omega_cavity + 2 * params.hopping!r}) for '{subcommand}'",
            )
        )
    if subcommand == "boc" and params.coupling == 0:
        violations.append(Violation("system.coupling", "core-model", "must be > 0 for 'boc'"))
    if subcommand == "sweep" and config.sweep is None:
        violations.append(Violation("sweep", "cli-io", "a [sweep] section is required for 'sweep'"))
    return violations


def validate(config: Union[RunConfig, Mapping[str, Any]], subcommand: str) -> ValidationReport:
    """Checks a configuration against the schema and the requirements of one subcommand.

    Args:
        config (RunConfig | Mapping): A parsed config, or the flat mapping returned by load_config.
        subcommand (str): One of SUBCOMMANDS.

    Raises:
        ValueError: Unknown subcommand.

    Returns:
        ValidationReport: Violations with their field and module; carries the parsed config when clean.
    """
    if subcommand not in SUBCOMMANDS:
        raise ValueError(f"Invalid option for subcommand. Options: {SUBCOMMANDS}")

    if not isinstance(config, RunConfig):
        empty = [key for key, value in config.items() if value is None]
        if empty:
            violations = [Violation(key, _module_of(key), "missing value") for key in empty]
            return ValidationReport(subcommand, tuple(violations))
        try:
            config = RunConfig.from_flat(config)
        except ValidationError as error:
            return ValidationReport(subcommand, tuple(_pydantic_violations(error)))

    violations = _model_violations(config, subcommand)
    if violations:
        return ValidationReport(subcommand, tuple(violations))

    warnings = config.build_lattice().warnings
    if subcommand == "sweep":
        lattice_warnings = []
        for value in config.sweep.values:
            try:
                lattice_warnings.extend(config.with_override(config.sweep.parameter, value).build_lattice().warnings)
            except ConfigurationError as error:
                violations.append(Violation(error.field, _module_of(error.field), f"{error.reason} (sweep value {value!r})"))
        warnings = tuple(dict.fromkeys(tuple(warnings) + tuple(lattice_warnings)))
        if violations:
            return ValidationReport(subcommand, tuple(violations))

    return ValidationReport(subcommand, (), tuple(warnings), config)
