"""Exception types raised across the package."""


class Char2EOError(Exception):
    """Base class for all package errors."""


class DivisionByZero(Char2EOError, ZeroDivisionError):
    pass


class FieldTooSmall(Char2EOError, ValueError):
    """The chosen GF(2^n) does not contain the roots or points that are needed."""


class PoleAtInfinity(Char2EOError, ValueError):
    pass


class Unramified(Char2EOError, ValueError):
    """After reduction f is constant, so there is no branch point."""


class DimensionMismatch(Char2EOError, ValueError):
    pass


class CtxMismatch(Char2EOError, ValueError):
    pass


class NotAChain(Char2EOError, ArithmeticError):
    """The V / F^-1 closure of a module is not totally ordered by inclusion."""


class MixedStep(Char2EOError, ArithmeticError):
    """V is neither zero nor injective on a graded piece of the canonical chain."""


class InputError(Char2EOError, ValueError):
    """Malformed curve or module file."""
