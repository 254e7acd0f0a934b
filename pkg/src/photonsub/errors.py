"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionError(ArithmeticError):
    """A numerical grid or truncation is too coarse for the requested tolerance."""


class UnsupportedFilterError(TypeError):
    """The filter kind cannot be sampled (the delta limit is handled analytically)."""


class UnreachableTargetError(RuntimeError):
    """A design search could not meet its target.

    ``best`` carries the best value achieved during the search.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
