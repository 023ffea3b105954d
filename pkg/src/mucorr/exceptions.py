"""Exception hierarchy.

Everything raised on purpose derives from :class:`MucorrError`. Input
problems are also ``ValueError`` so callers used to numpy/sklearn
conventions can catch them the usual way; :class:`NumericalError` and its
children signal a failed numerical check rather than bad input.
"""


class MucorrError(Exception):
    """Base class for all package errors."""


class InvalidInputError(MucorrError, ValueError):
    pass


class LengthError(InvalidInputError):
    """Series shorter than two observations."""


class NonFiniteError(InvalidInputError):
    pass


class ZeroVarianceError(InvalidInputError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class LengthMismatchError(InvalidInputError):
    pass


class DimensionMismatchError(InvalidInputError):
    pass


class DimensionError(InvalidInputError):
    pass


class RankError(InvalidInputError):
    """More variables than observations."""


class DomainError(InvalidInputError):
    pass


class RangeError(InvalidInputError):
    pass


class SizeError(InvalidInputError):
    pass


class ArityError(InvalidInputError):
    pass


class NotPSDError(InvalidInputError):
    pass


class EmptyIntersectionError(InvalidInputError):
    pass


class BudgetExceededError(MucorrError):
    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class NumericalError(MucorrError, ArithmeticError):
    pass


class DegenerateBasisError(NumericalError):
    """Predictors are collinear after centering."""


class ConstantFitError(NumericalError):
    """Fitted values have zero variance, so their correlation is undefined."""


class NoFeasibleSubsetError(MucorrError):
    pass


class ParseError(InvalidInputError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class MissingColumnError(InvalidInputError):
    pass


class EmptyResultError(InvalidInputError):
    pass
