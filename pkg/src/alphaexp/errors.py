"""Exception hierarchy shared by all modules."""


class AlphaExpError(Exception):
    """Base class for errors raised by this package."""


class DomainError(AlphaExpError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PrecisionError(AlphaExpError, ArithmeticError):
    """Input approximation too coarse for the requested computation.

    ``required_bits`` is a suggested input precision that should succeed.
    """

    def __init__(self, message: str, required_bits: int | None = None):
        super().__init__(message)
        self.required_bits = required_bits


class ResourceError(AlphaExpError, RuntimeError):
    """An iteration or size cap was exceeded."""
