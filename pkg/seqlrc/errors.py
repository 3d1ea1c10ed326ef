"""Exception hierarchy shared by every seqlrc module.

The CLI maps each class to a distinct exit code (see ``seqlrc.cli``).
"""


class SeqLrcError(Exception):
    """Base class of all errors raised by seqlrc."""


class DomainError(SeqLrcError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidParametersError(DomainError):
    """Construction parameters (field, design, recursion) are invalid."""


class PreconditionError(DomainError):
    """A documented precondition of the operation does not hold."""


class ResourceLimitError(SeqLrcError, RuntimeError):
    """An enumeration would exceed one of the configured limits."""

    def __init__(self, what, value, limit_name, limit):
        self.value = value
        self.limit_name = limit_name
        self.limit = limit
        super().__init__(f"{what} ({value}) exceeds {limit_name}={limit}")


class RetryExhaustedError(SeqLrcError, RuntimeError):
    """The randomized completion search gave up."""

    def __init__(self, attempts, message):
        self.attempts = attempts
        super().__init__(f"{message} (attempts={attempts})")


class InvariantViolation(SeqLrcError, AssertionError):
    """An internal invariant failed; indicates a bug, not a user error."""
