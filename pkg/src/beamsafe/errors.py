"""Exception types raised by beamsafe.

The CLI maps these onto exit codes: ``ConfigError`` -> 2,
``UnsupportedDomainError`` -> 3, ``NumericsError`` -> 4.
"""


class BeamsafeError(Exception):
    """Base class for all package errors."""


class ParameterError(BeamsafeError, ValueError):
    """An argument is outside the range the model accepts."""


class UnsupportedDomainError(BeamsafeError, ValueError):
    """Wavelength or exposure duration not covered by the exposure-limit tables."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class NumericsError(BeamsafeError, ArithmeticError):
    """A numerical kernel failed to reach its target accuracy."""


class NonConvergenceError(NumericsError):
    """Adaptive quadrature hit its subdivision cap.

    ``value`` holds the partial estimate and ``error_estimate`` the
    residual at the point of failure.
    """

    def __init__(self, message, value, error_estimate):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class BracketError(NumericsError):
    """Root finder was given an interval without a sign change."""


class FocalSingularityError(NumericsError):
    """ABCD transform with a vanishing denominator C*q + D."""


class ConfigError(BeamsafeError, ValueError):
    """Scenario configuration failed validation.

    ``path`` is the dotted location of the offending field.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
