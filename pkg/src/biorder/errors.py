"""Exception hierarchy shared by every module."""


class BiorderError(Exception):
    pass


class IdentityInput(BiorderError, ValueError):
    """An operation that needs a nontrivial element got the identity."""


class TruncationExceeded(BiorderError):
    """The Magnus series agreed with 1 up to the maximum degree."""

    def __init__(self, word, max_degree):
        super().__init__(f"series of {word!r} is 1 up to degree {max_degree}")
        self.word = word
        self.max_degree = max_degree


class ImmediateClash(BiorderError):
    pass


class LengthExceeded(BiorderError, ValueError):
    pass


class BudgetExhausted(BiorderError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class EmptySupport(BiorderError):
    pass


class NotPositive(BiorderError, ValueError):
    pass


class PreconditionFailed(BiorderError, ValueError):
    pass


class NotFound(BiorderError):
    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}
