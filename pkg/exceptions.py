from __future__ import annotations


class EquiPermError(Exception):
    """Base class for every error raised by this package."""


class InputError(EquiPermError, ValueError):
    """
    Raised when a caller passes an argument outside an operation's domain (for example
    a non-positive ``n`` or a set partition of the wrong ground set).
    """


class BudgetExceededError(InputError):
    """
    Raised when an exhaustive computation would exceed its configured bound.

    The offending quantity and the bound are kept on the instance so the command line
    can report both.
    """

    def __init__(self, what: str, value: int, bound: int):
        super().__init__(f"{what} = {value} exceeds the configured bound {bound}")
        self.what = what
        self.value = value
        self.bound = bound


class PreconditionError(InputError):
    """
    Raised when an operation is requested for an input it is not defined on, such as a
    conjecture that only applies when the equivariant φ-series is a polynomial.
    """


class InvariantViolation(EquiPermError):
    """
    Raised when a computed value breaks a structural invariant (a non-integer character
    multiplicity, a pole where none is possible). It always signals a bug upstream of the
    raising call, never bad input.
    """
