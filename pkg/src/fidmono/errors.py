"""Exception hierarchy shared by every module.

The CLI maps :class:`InputError` to exit status 2 and
:class:`NumericalError` to exit status 3.
"""


class FidmonoError(Exception):
    pass


class InputError(FidmonoError, ValueError):
    """Invalid arguments, shapes, parameters or files."""


class SizeError(InputError):
    """Requested system exceeds the configured size cap."""


class DomainError(InputError):
    """Scalar argument outside the domain of a closed-form function."""


class NumericalError(FidmonoError, ArithmeticError):
    """A numerical routine failed (no convergence, invalid spectrum)."""


class NotPSDError(NumericalError):
    """Matrix has an eigenvalue below the clamping tolerance."""
