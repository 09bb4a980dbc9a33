"""Exception types shared across the package."""


class ExtcalcError(Exception):
    """Base class for all errors raised by extcalc."""


class ParseError(ExtcalcError):
    """Malformed input text; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DimensionMismatch(ExtcalcError):
    """Operands live in incompatible spaces."""


class DegreeError(ExtcalcError):
    """Form degree does not match what the operation requires."""


class SingularityError(ExtcalcError):
    """Evaluation hit a pole or a log/sqrt domain violation."""


class NotPolynomialError(ExtcalcError):
    """Expression is not polynomial in the required variable."""


class NotClosedError(ExtcalcError):
    """A closed form was required but d(form) != 0."""


class RankDeficientError(ExtcalcError):
    """Surface parametrization is not an immersion at the requested point."""


class InconsistentSequenceError(ExtcalcError):
    """Exact-sequence data admits no solution."""
