"""Exception types shared across the toolkit."""


class PackdomError(Exception):
    """Base class for all toolkit errors."""


class InputError(PackdomError, ValueError):
    """A caller violated a documented precondition or passed malformed data."""


class ParseError(InputError):
    """Malformed text input; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SizeRefusalError(InputError):
    """An exhaustive routine refused an input too large for enumeration."""


class SolveTimeout(PackdomError):
    """An exact solve exceeded its time budget; no answer is implied."""


class InternalInvariantError(PackdomError, RuntimeError):
    """A structural guarantee the algorithms rely on failed; this is a bug trap."""
