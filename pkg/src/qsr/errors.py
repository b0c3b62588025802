"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class SearchExhausted(Exception):
    """A bounded search ran out of budget without finding a witness.

    Carries the sup-norm radius that was exhausted, so callers can report
    "not found up to R" instead of a bare failure.
    """

    def __init__(self, radius, message=None):
        self.radius = radius
        super().__init__(message or f"no witness found up to sup-norm radius {radius}")
