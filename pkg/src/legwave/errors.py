"""Exception types raised across the package."""


class LegwaveError(Exception):
    """Base class for all package errors."""


class InvalidOrder(LegwaveError, ValueError):
    """Polynomial degree is not an odd positive integer (or out of range)."""


class OverflowRisk(LegwaveError, ValueError):
    """Requested degree exceeds the exact-arithmetic guard."""


class ResourceLimit(LegwaveError):
    """Requested grid or iteration count would exceed the memory guard."""


class EigenFailure(LegwaveError, ArithmeticError):
    """Two-scale matrix has no eigenvalue close enough to one."""


class LengthError(LegwaveError, ValueError):
    """Signal or image dimensions incompatible with the requested levels."""


class UnsupportedBoundary(LegwaveError, ValueError):
    """Only periodic extension is implemented."""


class ShapeMismatch(LegwaveError, ValueError):
    """Decomposition pieces have inconsistent lengths."""


class DomainError(LegwaveError, ValueError):
    """Evaluation grid touches a singular point."""
