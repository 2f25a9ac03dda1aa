"""Exceptions raised by the zigzag library."""


class ZigzagError(Exception):
    """Base class for all library errors."""


class SingularHessianError(ZigzagError):
    """Hessian factorization hit a pivot below the relative singularity threshold."""


class ZeroDirectionError(ZigzagError):
    """A pullback vector vanished (purely quadratic neighbourhood)."""


class NonFiniteValueError(ZigzagError):
    """A model produced a non-finite value or derivative."""


class OracleFailureError(ZigzagError):
    """A finite-difference sample returned a non-finite value."""


class SearchFailureError(ZigzagError):
    """Every sample of a line search failed to evaluate."""


class DimensionMismatchError(ZigzagError, ValueError):
    """Array shapes do not agree with the problem dimension."""


class UnknownPresetError(ZigzagError, KeyError):
    """No function preset is registered under the requested name."""
