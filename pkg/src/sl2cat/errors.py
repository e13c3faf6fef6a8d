"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimit(RuntimeError):
    """A computation would exceed a configured enumeration or size bound."""


class InternalError(AssertionError):
    """A mathematical invariant failed; the state is corrupted."""
