"""Exception types raised by fredconv."""


class FredconvError(Exception):
    """Base class for all errors raised by this package."""


class IntervalError(FredconvError, ValueError):
    """An interval is degenerate or not contained where it must be."""


class NumericalError(FredconvError, ArithmeticError):
    """A computation could not produce a trustworthy answer."""


class ConvergenceError(NumericalError):
    """Adaptive refinement hit its cap before meeting the tolerance."""


class SingularSystemError(NumericalError):
    """A linear system is singular or too ill-conditioned for the tolerance."""
