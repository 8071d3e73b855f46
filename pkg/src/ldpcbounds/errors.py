"""Exception types shared across the package."""


class LdpcBoundsError(Exception):
    """Base class for all package-specific errors."""


class InvalidDistributionError(LdpcBoundsError, ValueError):
    """A degree distribution violates its invariants."""


class InvalidSpecError(LdpcBoundsError, ValueError):
    """An ensemble specification cannot be realized."""


class SamplingFailureError(LdpcBoundsError, RuntimeError):
    """Rejection sampling exhausted its attempt budget."""

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts


class ConstructionError(LdpcBoundsError, ValueError):
    """A deterministic graph construction is infeasible."""


class AlistParseError(LdpcBoundsError, ValueError):
    """An alist file is malformed.

    ``line`` is the 1-indexed line number where parsing failed, or None
    when the problem is not attributable to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapacityError(LdpcBoundsError, RuntimeError):
    """An exhaustive computation exceeds its guarded size limit."""


class RegimeError(LdpcBoundsError, ValueError):
    """Arguments fall outside the validity window of a formula."""


class ConfigError(LdpcBoundsError, ValueError):
    """An experiment configuration is invalid."""
