"""Exception types shared across the package."""


class DigitFractalError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDigitSet(DigitFractalError, ValueError):
    pass


class BaseTooSmall(InvalidDigitSet):
    pass


class MissingZero(InvalidDigitSet):
    pass


class DigitOutOfRange(InvalidDigitSet):
    pass


class DuplicateDigit(InvalidDigitSet):
    pass


class BudgetExceeded(DigitFractalError):
    """A materialized word would exceed the configured symbol budget."""

    def __init__(self, size: int, budget: int):
        super().__init__(f"requested {size} symbols, budget is {budget}")
        self.size = size
        self.budget = budget


class UnsupportedDegree(DigitFractalError):
    pass


class DegenerateLeadingCoefficient(DigitFractalError):
    pass


class DegenerateLeadingCoefficientWarning(UserWarning):
    pass
