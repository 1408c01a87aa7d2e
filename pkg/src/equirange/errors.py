"""Exception types raised by equirange.

Every error is a ``ValueError`` subclass so callers that only care about
"bad input" can catch that; the CLI maps all of them to exit status 2.
"""


class EquirangeError(ValueError):
    pass


class InvalidArityError(EquirangeError):
    """A tally was asked for fewer than two outcomes."""


class InvalidOutcomeError(EquirangeError):
    """An outcome index outside ``[0, k)`` was recorded."""


class EmptyTallyError(EquirangeError):
    """A statistic was requested from a tally with no trials."""


class InvalidRangeError(EquirangeError):
    pass


class InvalidParameterError(EquirangeError):
    pass


class EmptyDomainError(EquirangeError):
    """Sieve limit below the smallest prime."""


class InvalidDigitError(EquirangeError):
    pass


class InsufficientDataError(EquirangeError):
    """Fewer than two usable points for a fit."""


class DegenerateAbscissaError(EquirangeError):
    """All fit abscissae are equal, so the slope is undefined."""
