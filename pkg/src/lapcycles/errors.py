"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the domain an operation accepts."""


class ValidationError(ValueError):
    """Input data is malformed (non-bijective permutation, mixed records, ...)."""


class SizeError(ValueError):
    """Instance too large for an exhaustive method."""


class FitError(ValueError):
    """Degenerate input to a regression."""


class InsufficientDataError(FitError):
    """Too few usable points survive filtering to fit."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
