"""Exception hierarchy shared by every module.

Each class name doubles as the error name reported by the command line tool.
"""


class DomainError(Exception):
    """Base class for errors caused by mathematically invalid input."""

    @property
    def name(self):
        return type(self).__name__


# exact arithmetic
class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NonHalfIntegerExponent(DomainError):
    pass


class PoleAtPoint(DomainError):
    pass


class LimitDiverges(DomainError):
    pass


# root systems and weights
class InvalidRank(DomainError):
    pass


class KindMismatch(DomainError):
    pass


class NonRepresentableBracketArgument(DomainError):
    pass


class ZeroDenominatorBracket(DomainError):
    pass


class NonIntegralDimension(DomainError):
    pass


class WeightSyntaxError(DomainError):
    pass


# decomposition tables
class NotAllowable(DomainError):
    pass


class SchemaError(DomainError):
    pass


class InvariantViolation(DomainError):
    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"term {index}: {message}")
        self.index = index


# oracles
class IndexNestingUnresolved(DomainError):
    pass
