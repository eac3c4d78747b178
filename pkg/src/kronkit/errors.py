"""Exception types shared across the package."""


class KronkitError(Exception):
    """Base class for toolkit-specific failures."""


class Graph6Error(KronkitError, ValueError):
    """Malformed graph6 text; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedSizeError(KronkitError, ValueError):
    """Input outside the size range a format or guard supports."""


class PreconditionError(KronkitError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceededError(KronkitError, RuntimeError):
    """A subset scan would exceed the configured budget.

    ``required`` is the number of subsets the scan would have to visit.
    """

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class SamplingExhaustedError(KronkitError, RuntimeError):
    """Rejection sampling hit its cap without producing a valid sample."""
