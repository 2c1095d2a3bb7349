"""Shared exception types."""


class UnsupportedOrderError(ValueError):
    """Raised for orders (or subgroup-order specs) outside the covered case table."""

    def __init__(self, message, n=None, exponents=None):
        super().__init__(message)
        self.n = n
        self.exponents = exponents


class ResourceLimitError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its configured cap."""


class PrimeOverflowError(OverflowError):
    """Raised for prime inputs beyond the supported 31-bit bound."""
