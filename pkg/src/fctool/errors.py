"""Exception types shared by every module."""


class FCToolError(Exception):
    pass


class RankError(FCToolError, ValueError):
    """Rank below the minimum for the requested family."""


class AlphabetError(FCToolError, ValueError):
    """A token that does not name a generator of the system."""

    def __init__(self, message, position=None, token=None):
        super().__init__(message)
        self.position = position
        self.token = token


class NotReducedError(FCToolError, ValueError):
    pass


class NotFCError(FCToolError, ValueError):
    pass


class DomainError(FCToolError, ValueError):
    """Input outside the domain of a map or classification."""


class InvalidFormError(FCToolError, ValueError):
    pass


class IntervalError(FCToolError, ValueError):
    pass


class SystemMismatchError(FCToolError, ValueError):
    pass


class BudgetError(FCToolError, RuntimeError):
    """An enumeration would exceed the configured element ceiling."""
