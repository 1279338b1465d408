"""Exception types raised across the package."""

__all__ = [
    "CircKrigError",
    "AliasingError",
    "AllowabilityError",
    "ConditioningError",
    "DuplicatePointsError",
    "InsufficientDataError",
    "SpectrumError",
    "UnisolvencyError",
    "VariogramShiftError",
]


class CircKrigError(Exception):
    """Base class for all errors raised by this package."""


class UnisolvencyError(CircKrigError):
    """Node set cannot pin down a unique low-order trigonometric polynomial."""


class DuplicatePointsError(CircKrigError):
    """Two observation angles coincide after canonicalization."""


class InsufficientDataError(CircKrigError):
    """Fewer observations than the dimension of the drift space."""


class ConditioningError(CircKrigError):
    """A linear system is singular or too ill-conditioned to solve reliably."""


class SpectrumError(CircKrigError):
    """Invalid spectral coefficients: wrong sign, non-summable decay, or
    energy at a frequency the model assigns no weight to."""


class VariogramShiftError(CircKrigError):
    """Variogram-to-covariance constant falls below the admissible bound."""


class AliasingError(CircKrigError):
    """Requested frequency content cannot be represented on the grid."""


class AllowabilityError(CircKrigError):
    """Measure does not annihilate the low-order trigonometric functions."""
