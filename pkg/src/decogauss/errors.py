"""Exception types raised by decogauss."""


class DecoGaussError(Exception):
    """Base class for all package errors."""


class InvalidStateError(DecoGaussError, ValueError):
    """Second moments do not describe a physical Gaussian state."""


class DomainError(DecoGaussError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConfigError(DecoGaussError, ValueError):
    """A sweep configuration or grid setup is unusable."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResolutionError(ConfigError):
    """A numerical grid cannot resolve the state it is asked to hold."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
