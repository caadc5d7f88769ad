"""This file contains errors associated with the physical parameters and the lattice geometry."""


class ConfigurationError(Exception):
    """Error thrown when parameters or lattice geometry break their invariants."""

    def __init__(self, field: str, reason: str):
        super().__init__()
        self.field = field
        self.reason = reason

    def __str__(self):
        return f"ConfigurationError: {self.field}: {self.reason}"


class OutOfBandError(Exception):
    """Error thrown when the atomic frequency lies outside the photonic band."""

    def __init__(self, omega_atom: float, band: tuple):
        super().__init__()
        self.omega_atom = omega_atom
        self.band = band

    def __str__(self):
        low, high = self.band
        return (
            f"OutOfBandError: omega_atom={self.omega_atom!r} is not strictly inside "
            f"the band ({low!r}, {high!r})."
        )


class SingularParameterError(Exception):
    """Error thrown when the atom sits on a band edge, where sin(K) vanishes."""

    def __init__(self, omega_atom: float):
        super().__init__()
        self.omega_atom = omega_atom

    def __str__(self):
        return f"SingularParameterError: omega_atom={self.omega_atom!r} sits on a band edge (sin K = 0)."


class ConditionError(Exception):
    """Error thrown when the bound state in the continuum condition does not hold."""

    def __init__(self, condition: str, value: float):
        super().__init__()
        self.condition = condition
        self.value = value

    def __str__(self):
        return (
            f"ConditionError: {self.condition} is violated (|1 + e^(i(...))|^2 = {self.value:.3e}); "
            "the photon profile does not terminate beyond the right leg."
        )
