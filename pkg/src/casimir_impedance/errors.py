"""Exception hierarchy shared by every module of the package."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """Input outside the domain of a response function (e.g. zero frequency)."""


class PoleError(CasimirError, ZeroDivisionError):
    """A denominator of a response function vanished."""


class ModelError(CasimirError, ValueError):
    """The requested physical model cannot handle the given parameters."""


class SchemaError(CasimirError, ValueError):
    """A material database file or record failed validation."""


class SingularModeError(CasimirError, ZeroDivisionError):
    """A measure-zero mode (grazing k0 = 0, longitudinal threshold l = 0) was hit."""


class SingularResponseError(CasimirError, ZeroDivisionError):
    """Vanishing dielectric response or medium wavevector."""


class ResonanceError(CasimirError, ZeroDivisionError):
    """A resonance denominator (surface mode, cavity mode) vanished."""


class UnsupportedFeatureError(CasimirError, NotImplementedError):
    """Feature deliberately outside the scope of the package."""


class ConvergenceError(CasimirError, RuntimeError):
    """Quadrature did not reach the requested tolerance.

    Parameters
    ----------
    message : str
        Human readable explanation, including a hint on what to change.
    estimate : float, optional
        Partial estimate of the integral at the point of failure.
    abs_error : float, optional
        Error estimate attached to ``estimate``.
    """

    def __init__(self, message, estimate=None, abs_error=None):
        super().__init__(message)
        self.estimate = estimate
        self.abs_error = abs_error
