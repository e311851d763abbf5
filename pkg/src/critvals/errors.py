"""Exception hierarchy.

Every error raised by the package derives from :class:`CritvalsError`.  Input
problems derive from :class:`InputError` and numerical failures from
:class:`NumericalError`; the command line maps these to exit codes 1 and 2.
A pipeline may attach the name of the failing stage through ``stage``.
"""

from __future__ import annotations


class CritvalsError(Exception):
    def __init__(self, message: str = "", *, stage: str | None = None, **details):
        super().__init__(message)
        self.stage = stage
        self.details = details

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class InputError(CritvalsError, ValueError):
    pass


class NumericalError(CritvalsError, ArithmeticError):
    pass


# -- expressions -------------------------------------------------------------

class ExprSyntaxError(InputError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        text = f"{message} at position {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text, position=position, expected=expected)
        self.position = position
        self.expected = expected


class NonPolynomialExponent(InputError):
    pass


class OverflowToInfinity(NumericalError):
    pass


class ConstantInput(InputError):
    pass


# -- algebra -----------------------------------------------------------------

class NotMonic(InputError):
    pass


class DegreeZero(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NoConvergence(NumericalError):
    pass


# -- contour -----------------------------------------------------------------

class NonFiniteSample(NumericalError):
    pass


class ZeroNearContour(NumericalError):
    pass


class NotNearInteger(NumericalError):
    pass


class ResolventNearSingular(NumericalError):
    pass


# -- monodromy ---------------------------------------------------------------

class DuplicateValuesCollapsed(NumericalError):
    pass


class PathCollision(NumericalError):
    pass


class NewtonDivergence(NumericalError):
    pass


class InvalidPermutation(InputError):
    pass


class DegenerateCriticalPoint(NumericalError):
    pass


class WindowFiberUnstable(NumericalError):
    pass


# -- typicality --------------------------------------------------------------

class GridExhausted(NumericalError):
    pass


class DuplicatePoints(InputError):
    pass


class DeltaTooLarge(InputError):
    pass


class UnknownSubcommand(InputError):
    pass
