"""Exception hierarchy shared by all waringlab modules."""


class WaringError(Exception):
    """Base class for every error raised by waringlab."""


class NoSolution(WaringError):
    """Linear system is inconsistent: rank([A|b]) > rank(A)."""


class ZeroPolynomial(WaringError):
    pass


class NotSymmetric(WaringError):
    pass


class ZeroPoint(WaringError):
    pass


class ZeroForm(WaringError):
    pass


class PointOnLine(WaringError):
    pass


class NotSubgeneric(WaringError):
    """Binary border rank is at or above (d+2)/2; the canonical scheme is not unique."""


class IllConditioned(WaringError):
    pass


class DegreeTooLarge(WaringError):
    pass


class NotZeroDimensional(WaringError):
    pass


class DegreeMismatch(WaringError):
    pass


class NotCurvilinear(WaringError):
    pass


class OutOfRegime(WaringError):
    pass


class RegimeViolation(WaringError):
    """Generator parameters violate a named inequality."""

    def __init__(self, inequality, detail=""):
        self.inequality = inequality
        msg = f"violates {inequality}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PreconditionError(WaringError):
    pass


class ParseError(WaringError):
    pass


class InvariantBreach(WaringError):
    """A computed decomposition failed its own verification."""
