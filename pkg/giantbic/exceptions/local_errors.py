"""This file contains errors associated with locating and validating run configurations"""

from typing import List

from ..configs.default_configs import CONFIG_ENV_NAME


class ConfigNotFoundError(Exception):
    """Error thrown when no readable configuration file can be located."""

    def __init__(self, path: str = None):
        super().__init__()
        self.path = path

    def __str__(self):
        if self.path:
            return f"ConfigNotFoundError: Unable to read configuration file '{self.path}'."
        return f"""
ConfigNotFoundError: No configuration supplied.
    Pass --config <path>, or set the path in the local environment:
        {CONFIG_ENV_NAME}
    """


class ValidationFailedError(Exception):
    """Error thrown when a run configuration fails validation."""

    def __init__(self, violations: List):
        super().__init__()
        self.violations = list(violations)

    def __str__(self):
        lines = [f"  [{v.module}] {v.field}: {v.message}" for v in self.violations]
        return "ValidationFailedError:\n" + "\n".join(lines)
