"""Exception hierarchy shared by every module of the package."""


class SBAError(Exception):
    """Base class for all errors raised by sbalaurent."""


class DivisionByZero(SBAError, ZeroDivisionError):
    pass


class FieldMismatch(SBAError, ValueError):
    pass


class NotSquare(SBAError, ValueError):
    pass


class PrecisionExhausted(SBAError):
    """Not enough known tail coefficients for the requested object.

    ``shape`` carries the offending shape when one is involved.
    """

    def __init__(self, message, shape=None, needed=None, available=None):
        super().__init__(message)
        self.shape = shape
        self.needed = needed
        self.available = available


class ZeroVector(SBAError, ValueError):
    pass


class ZeroLinearForm(SBAError):
    """A linear form vanishes to every known coefficient.

    ``row`` is the index of the form, ``precision`` the number of tail
    coefficients known to be zero (so only ``||form|| < e^-precision`` is known).
    """

    def __init__(self, message, row, precision, xi=None):
        super().__init__(message)
        self.row = row
        self.precision = precision
        self.xi = xi


class InfiniteField(SBAError, ValueError):
    """Raised when an enumeration over the field itself is requested for Q."""


class InfiniteFieldRequired(SBAError, ValueError):
    """Raised when a construction needs an infinite coefficient field."""


class EmptySearchSpace(SBAError, ValueError):
    pass


class InductionBroken(SBAError):
    """Every coefficient of a determinant constraint vanished.

    This only happens when a lower-order square matrix was singular, i.e. the
    input was not certified the way the caller claimed.
    """

    def __init__(self, message, shape=None):
        super().__init__(message)
        self.shape = shape


class PositiveCharacteristic(SBAError, ValueError):
    pass
