"""Subcommand dispatch and exit code mapping shared by the command line and library callers."""

import logging
from typing import Any, Mapping, Union

from .base_classes.manifest import ResultManifest
from .base_classes.run_config import RunConfig
from .base_classes.simulator import Simulator
from .configs import EXIT_CODES
from .exceptions.dynamics_errors import InputError, ModelUnavailableError
from .exceptions.local_errors import ConfigNotFoundError, ValidationFailedError
from .exceptions.model_errors import ConditionError, ConfigurationError, OutOfBandError, SingularParameterError
from .utils.validation import validate

logger = logging.getLogger(__name__)

VALIDATION_ERRORS = (
    ConfigNotFoundError,
    ValidationFailedError,
    ConfigurationError,
    OutOfBandError,
    SingularParameterError,
    InputError,
)
MODEL_UNAVAILABLE_ERRORS = (ModelUnavailableError, ConditionError)


def run(
    subcommand: str,
    config: Union[RunConfig, Mapping[str, Any]],
    output_dir: str = None,
    fmt: str = None,
    jobs: int = 1,
) -> ResultManifest:
    """Validates a configuration and runs one subcommand.

    Args:
        subcommand (str): One of SUBCOMMANDS.
        config (RunConfig | Mapping): Parsed config or the flat mapping returned by load_config.
        output_dir (str, optional): Defaults to output.directory of the config.
        fmt (str, optional): "csv" or "json". Defaults to output.format of the config.
        jobs (int, optional): Worker processes for sweeps. Defaults to 1.

    Raises:
        ValidationFailedError: The configuration does not validate for this subcommand.

    Returns:
        ResultManifest: Manifest of the written files.
    """
    report = validate(config, subcommand)
    if not report.ok:
        raise ValidationFailedError(report.violations)
    for warning in report.warnings:
        logger.warning(warning)

    simulator = Simulator(report.config, output_dir, fmt)
    logger.info("Running %s with %r", subcommand, simulator)
    return simulator.run(subcommand, jobs)


def exit_code(error: BaseException = None, manifest: ResultManifest = None) -> int:
    """Maps an outcome onto the documented exit codes."""
    if error is None:
        if manifest is not None and manifest.summary.get("passed") is False:
            return EXIT_CODES["internal"]
        return EXIT_CODES["ok"]
    if isinstance(error, VALIDATION_ERRORS):
        return EXIT_CODES["validation"]
    if isinstance(error, MODEL_UNAVAILABLE_ERRORS):
        return EXIT_CODES["model_unavailable"]
    return EXIT_CODES["internal"]
