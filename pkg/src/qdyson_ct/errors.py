"""Exception hierarchy shared by all modules."""


class QDysonError(Exception):
    """Base class for every error raised by this package."""


class NonExactDivision(QDysonError, ArithmeticError):
    """Polynomial division over Z[q] left a remainder or a non-integer coefficient."""


class DivisionByZero(QDysonError, ZeroDivisionError):
    pass


class DimensionMismatch(QDysonError, ValueError):
    pass


class ZeroParameter(QDysonError, ValueError):
    """An operation requiring positive parameters received a zero entry."""


class DuplicateNode(QDysonError, ValueError):
    pass


class GridSizeMismatch(QDysonError, ValueError):
    pass


class DegreeBoundExceeded(QDysonError, ValueError):
    """Declared total degree is larger than the grid can resolve."""


class ScaleLimitExceeded(QDysonError, RuntimeError):
    """A configured node or term budget would be exceeded."""


class NonPolynomialResult(QDysonError, ArithmeticError):
    """A value expected to lie in Z[q] turned out to be a proper fraction."""


class SignOrPowerMismatch(QDysonError, ArithmeticError):
    """Sign or q-power bookkeeping failed to cancel."""
