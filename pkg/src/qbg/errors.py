"""Exception hierarchy shared across the package."""


class QbgError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QbgError, ValueError):
    """Malformed textual input (permutations, matrices, formats)."""


class PreconditionError(QbgError, ValueError):
    """A documented precondition of an operation was violated."""


class ResourceLimitError(QbgError):
    """Requested size exceeds the documented desk-scale bounds."""


class SamplingError(QbgError):
    """The stratum sampler exhausted its retry budget."""

    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column


class InternalInvariantError(QbgError):
    """A property the theory guarantees failed to hold; signals a bug."""
