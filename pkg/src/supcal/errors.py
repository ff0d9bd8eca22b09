"""Exception types raised across the package."""


class SupcalError(Exception):
    """Base class for all package errors."""


class DomainError(SupcalError, ValueError):
    """Argument outside the mathematical domain of a function."""


class NoSignChangeError(SupcalError, ValueError):
    """Root bracket whose endpoints do not straddle zero."""


class NonFiniteError(SupcalError, ArithmeticError):
    """Function evaluation produced nan or inf during root finding."""


class UnsupportedLevelError(SupcalError, ValueError):
    """Minimum support interval requested at a support level k > 1."""


class MappingUndefinedError(SupcalError, ValueError):
    """Confidence level outside the range where a level mapping exists."""


class UnsupportedMethodError(SupcalError, ValueError):
    """Interval method not valid for the requested operation."""


class InconsistentIntervalError(SupcalError, ValueError):
    """Interval endpoints do not match the method and data they claim to come from."""
