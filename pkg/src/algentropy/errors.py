"""Exception hierarchy.

The CLI maps these onto exit codes: parse errors exit 1, domain errors
exit 2, budget/stabilization failures exit 3.  Library users catch the
classes directly.
"""

__all__ = [
    "AlgentropyError",
    "ParseError",
    "DomainError",
    "AmbientMismatchError",
    "UnsupportedAmbientError",
    "IncompatibleEndoError",
    "NotDivisibleError",
    "NotInertError",
    "InfiniteIndexError",
    "NonInvertibleError",
    "ResourceError",
    "BudgetExceededError",
    "StabilizationError",
    "IndeterminateMeasureError",
]


class AlgentropyError(Exception):
    """Base class for all library errors."""


class ParseError(AlgentropyError):
    """Malformed textual/JSON input.  Carries a position when known."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(AlgentropyError):
    """The inputs are well formed but outside an operation's domain."""


class AmbientMismatchError(DomainError):
    """Two objects living in different ambient groups were combined."""


class UnsupportedAmbientError(DomainError):
    """The ambient group is outside the decidable fragment of an operation."""


class IncompatibleEndoError(DomainError):
    """A matrix does not define an endomorphism of the given group."""


class NotDivisibleError(DomainError):
    """Rational multiplication requested on a group that is not n-divisible."""


class NotInertError(DomainError):
    """An operation required an inert pair and the index came out infinite."""


class InfiniteIndexError(DomainError):
    """A finite index was required but the index is infinite."""


class NonInvertibleError(DomainError):
    """A negative power was requested of a non-invertible endomorphism."""


class ResourceError(AlgentropyError):
    """Budget family: element caps, scan sizes, iteration budgets."""


class BudgetExceededError(ResourceError):
    """An enumeration or search exceeded its configured cap."""


class StabilizationError(ResourceError):
    """A stabilizing sequence did not settle within max_steps."""


class IndeterminateMeasureError(ResourceError):
    """Root moduli could not be separated from the unit circle in budget."""
