"""Exception and warning types shared across the package."""


class RamanGateError(Exception):
    """Base class for all package errors."""


class BoundsError(RamanGateError, ValueError):
    """A basis label or level lies outside the truncated space."""

    def __init__(self, field, value, limit):
        self.field = field
        self.value = value
        self.limit = limit
        super().__init__(f"{field}={value!r} out of range (allowed: {limit})")


class ContractError(RamanGateError, ValueError):
    """A physics precondition (resonance, timing, detuning) is violated."""


class SingularParameterError(ContractError):
    """A parameter appears in a denominator and is zero."""


class IntegrationError(RamanGateError, RuntimeError):
    """Adaptive ODE integration failed before reaching the final time."""

    def __init__(self, message, t_fail):
        self.t_fail = t_fail
        super().__init__(f"{message} (failed at t={t_fail!r})")


class ConfigError(RamanGateError, ValueError):
    """Invalid run configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class AdiabaticValidityWarning(UserWarning):
    """Parameters are outside the large-detuning regime."""
