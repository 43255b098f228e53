"""Exception types raised by fgap."""


class FgapError(ValueError):
    """Base class for all fgap errors."""


class NotElliptic(FgapError):
    pass


class NotHyperbolic(FgapError):
    pass


class ZeroAngle(FgapError):
    pass


class PoleError(FgapError, OverflowError):
    """Raised when a point sits numerically on the pole of a Moebius map."""


class CoincidentPoints(FgapError):
    pass


class WrongOrders(FgapError):
    pass


class CoincidentFixedPoints(FgapError):
    pass


class ElementaryPair(FgapError):
    pass


class BadParameter(FgapError):
    pass


class NotHyperbolicSignature(BadParameter):
    pass


class BudgetExceeded(FgapError):
    pass


class InsufficientPoints(FgapError):
    pass


class NoHyperbolicElements(FgapError):
    pass
