class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


class RingMismatchError(DomainError):
    """Operands belong to different polynomial rings."""


class ExponentOverflowError(DomainError):
    """An exponent would leave the 64-bit range."""


class PolyParseError(DomainError):
    """Polynomial text could not be parsed. Carries the offending position."""

    def __init__(self, message, source="", position=0):
        self.message = message
        self.source = source
        self.position = position
        super().__init__(f"{message} (at position {position})")


class ResourceCapError(RuntimeError):
    """A configured computation limit was exhausted."""


class InvariantError(RuntimeError):
    """A mathematical invariant asserted at run time did not hold."""
