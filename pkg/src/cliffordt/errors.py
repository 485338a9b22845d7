"""Exception types shared across the toolkit."""


class CliffordTError(Exception):
    """Base class for all toolkit errors."""


class DomainError(CliffordTError, ValueError):
    """An argument violates a precondition (bad index, bad range, overlap)."""


class ResourceError(CliffordTError, RuntimeError):
    """A request exceeds the simulation resource ceiling."""


class ParseError(CliffordTError, ValueError):
    """A circuit file is malformed.  Carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}")


class FitError(CliffordTError, RuntimeError):
    """A curve fit could not be performed on the given data."""
