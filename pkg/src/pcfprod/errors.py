"""Exception hierarchy shared by every evaluation path."""


class PCFError(Exception):
    """Base class for all errors raised by :mod:`pcfprod`."""


class DomainError(PCFError, ValueError):
    """An argument lies outside the domain where the representation holds."""


class PoleError(DomainError):
    """The requested value sits on a pole (gamma, tan/cot factor, ...)."""


class ConvergenceError(PCFError, ArithmeticError):
    """A series hit its hard term cap before converging."""


class RegimeError(PCFError, ArithmeticError):
    """No evaluation regime reaches the requested accuracy at this point."""


class ToleranceNotMet(PCFError, ArithmeticError):
    """Quadrature finished without reaching the requested tolerance.

    The best available result is attached as ``result`` so callers can
    still inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
