"""Exception types shared across the package."""

from __future__ import annotations


class GrassError(Exception):
    """Base class for all errors raised by grasscode."""


# field construction / arithmetic
class NotPrimePower(GrassError, ValueError):
    pass


class Unsupported(GrassError, ValueError):
    pass


class DivisionByZero(GrassError, ZeroDivisionError):
    pass


# exterior algebra
class GradeOverflow(GrassError, ValueError):
    pass


class GradeUnderflow(GrassError, ValueError):
    pass


class GradeMismatch(GrassError, ValueError):
    pass


class GradeError(GrassError, ValueError):
    pass


class ArityMismatch(GrassError, ValueError):
    pass


class WrongGradeOrDim(GrassError, ValueError):
    pass


class ZeroEta(GrassError, ValueError):
    pass


class OddSize(GrassError, ValueError):
    pass


class FormParseError(GrassError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# enumeration / weights
class BudgetExceeded(GrassError, RuntimeError):
    pass


class NonDivisible(GrassError, ArithmeticError):
    """Raised when a count that must be divisible is not; always a bug."""


class RankOutOfRange(GrassError, ValueError):
    pass


class NonIntegerResult(GrassError, ArithmeticError):
    """Raised when the weight formula yields a non-integer; always a bug."""


class DegenerateInput(GrassError, ValueError):
    pass


class ZeroForm(GrassError, ValueError):
    pass


class MethodInapplicable(GrassError, ValueError):
    pass


# classification
class VariantMismatch(GrassError, ValueError):
    pass


class NoMatch(GrassError, RuntimeError):
    pass


class AmbiguousMatch(GrassError, RuntimeError):
    pass


# polynomials
class InexactDivision(GrassError, ArithmeticError):
    pass
