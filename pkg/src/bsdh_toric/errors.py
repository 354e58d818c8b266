class InvalidInputError(ValueError):
    """Raised when user data violates a documented invariant."""


class ConsistencyError(RuntimeError):
    """Two independent computations disagree. Always a bug."""
