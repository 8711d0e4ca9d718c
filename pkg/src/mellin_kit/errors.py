"""Exception hierarchy for mellin_kit."""


class MellinKitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(MellinKitError, ValueError):
    """Argument outside the mathematical domain (e.g. x <= 0, h <= 0)."""


class EvaluationDomainError(MellinKitError, ArithmeticError):
    """An evaluator produced a non-finite value."""


class UnsupportedSpaceError(MellinKitError, ValueError):
    """Requested X^p_c space or q-index is not supported by the operation."""


class WindowTooSmallError(MellinKitError):
    """Integrand has not decayed below the truncation floor at the window ends."""


class MellinRangeError(MellinKitError, OverflowError):
    """A node or weight falls outside the representable floating point range."""


class NotInDomainError(MellinKitError, ValueError):
    """The input does not satisfy an integrability hypothesis."""


class IncompleteDataError(MellinKitError, LookupError):
    """A required sample is missing."""


class DegenerateFitError(MellinKitError, ValueError):
    """A log-log fit was requested on data containing zeros."""


class InvalidParametersError(MellinKitError, ValueError):
    """Parameter combination violates the constraints of a bound."""


class NotFoundError(MellinKitError, LookupError):
    """Unknown catalog entry."""
