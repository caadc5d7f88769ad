"""This file contains errors raised by the time evolution and the signal analysis."""

from typing import List


class InputError(Exception):
    """Error thrown when states or sampled series are malformed."""

    def __init__(self, reason: str):
        super().__init__()
        self.reason = reason

    def __str__(self):
        return f"InputError: {self.reason}"


class ModelUnavailableError(Exception):
    """Error thrown when the three bound state model cannot be assembled."""

    def __init__(self, missing: List[str]):
        super().__init__()
        self.missing = list(missing)

    def __str__(self):
        return f"ModelUnavailableError: missing bound states: {', '.join(self.missing)}"
