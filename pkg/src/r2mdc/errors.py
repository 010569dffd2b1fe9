"""Exception hierarchy shared by every module."""


class R2mdcError(Exception):
    """Base class for all package errors."""


class ConfigError(R2mdcError, ValueError):
    """Invalid transform length or pipeline configuration."""


class UsageError(R2mdcError, ValueError):
    """An operation was called with arguments it does not accept."""


class ModeMismatchError(UsageError):
    """Operands belong to different numeric modes."""


class StreamError(UsageError):
    """A pipeline input stream broke the one-sample-per-cycle discipline."""


class DomainError(R2mdcError, ValueError):
    """A value cannot be represented (non-finite or out of range)."""


class ParseError(R2mdcError, ValueError):
    """Malformed sample file line."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class FrameLengthError(R2mdcError, ValueError):
    """Sample count is not a whole number of frames."""
