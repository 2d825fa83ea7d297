"""Exception types shared across the package."""


class JacobiSpecError(Exception):
    """Base class for all package-specific errors."""


class TagMismatchError(JacobiSpecError):
    """Raised when bivariate operands disagree on their outer variable."""


class ExactDivisionError(JacobiSpecError):
    """Raised when a division that must be exact leaves a remainder."""


class UnsupportedPencilError(JacobiSpecError):
    """Raised when an input pencil is outside the supported domain of an
    algorithm (for example repeated diagonal entries in the lifting
    decision, or a size-1 pencil in monodromy)."""


class NotSquarefreeError(JacobiSpecError):
    """Raised when a curve has a repeated factor and the caller asked for
    an operation that requires a squarefree curve."""


class TrackingError(JacobiSpecError):
    """Raised when numeric root tracking cannot certify a step even at the
    minimum allowed step size."""
