"""Exception types raised across the package."""


class DivisorError(Exception):
    """Base class for every error raised by this package."""


class RangeError(DivisorError, ValueError):
    """An argument lies outside the range a precomputed table covers."""


class ResourceError(DivisorError, MemoryError):
    """A requested table would exceed the configured memory budget."""


class ToleranceError(DivisorError, ArithmeticError):
    """A numerical routine could not reach the requested tolerance.

    ``best_bound`` carries the smallest error bound that was achieved, and
    ``where`` an optional description of the offending sub-problem.
    """

    def __init__(self, message, best_bound=None, where=None):
        super().__init__(message)
        self.best_bound = best_bound
        self.where = where


class PoleError(DivisorError, ValueError):
    """Evaluation requested at the pole s = 1 of the zeta function."""


class DomainError(DivisorError, ValueError):
    """Argument outside the supported real domain (e.g. s <= 0)."""
