"""Exception types raised across the package."""


class ClusterNetError(Exception):
    """Base class for all package errors."""


class DimensionError(ClusterNetError, ValueError):
    """Array shapes or lengths are inconsistent."""


class ValidationError(ClusterNetError, ValueError):
    """An input violates a structural requirement (symmetry, unitarity, ...)."""


class SingularityError(ClusterNetError, ArithmeticError):
    """A matrix that must be invertible is (numerically) singular."""


class InvalidPlanError(ClusterNetError, ValueError):
    """A measurement plan cannot eliminate the anti-squeezed quadratures."""
