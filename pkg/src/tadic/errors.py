"""Exception types shared across the package."""


class TadicError(Exception):
    """Base class for all package errors."""


class PrecisionError(TadicError):
    """Raised when a division or construction would exhaust p-adic precision."""


class BudgetError(TadicError):
    """Raised when an enumeration exceeds its stated point budget."""


class UsageError(TadicError):
    """Raised for invalid configuration or malformed input."""


class CertificateError(TadicError):
    """Raised when a computed object violates an internal decay or
    integrality certificate.  Signals a truncation bug, never bad input."""
