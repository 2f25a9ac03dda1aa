"""
Finite-difference oracles used to validate the closed-form derivatives.

Each oracle differences the next-lower analytic quantity: the gradient
oracle differences values, the Hessian oracle differences analytic
gradients and the third-derivative oracle differences analytic Hessians.
A value-only second difference is available through fd_hessian(...,
from_values=True) but its roundoff error (eps * |f| / h^2) is too large for
tight comparisons at h = 1e-5.
"""
import math
from typing import Callable

import numpy as np

from ..errors import NonFiniteValueError, OracleFailureError
from .models import ObjectiveModel, as_point

DEFAULT_STEP = 1e-5
THIRD_STEP = 1e-6


def _sample(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray):
    try:
        result = np.asarray(func(x), dtype=float)
    except NonFiniteValueError as e:
        raise OracleFailureError(str(e)) from e
    if not np.all(np.isfinite(result)):
        raise OracleFailureError(f"non-finite sample at {x}")
    return result


def _central(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float) -> np.ndarray:
    """Stack of (func(x + h e_k) - func(x - h e_k)) / 2h along the first axis."""
    if h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    slices = []
    for k in range(x.size):
        step = np.zeros_like(x)
        step[k] = h
        slices.append((_sample(func, x + step) - _sample(func, x - step)) / (2.0 * h))
    return np.stack(slices)


def fd_gradient(model: ObjectiveModel, x, h: float = DEFAULT_STEP) -> np.ndarray:
    """Central-difference gradient from function values."""
    point = as_point(x, model.dimension)
    return _central(model.value, point, h)


def fd_hessian(
    model: ObjectiveModel, x, h: float = DEFAULT_STEP, from_values: bool = False
) -> np.ndarray:
    """
    Central-difference Hessian, symmetrized as (A + A^T) / 2.

    Args:
        model: Model to sample
        x: Point
        h: Step size
        from_values: Use second differences of values instead of first
            differences of the analytic gradient
    """
    point = as_point(x, model.dimension)
    if from_values:
        n = point.size
        A = np.empty((n, n))
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = h
            for j in range(n):
                ej = np.zeros(n)
                ej[j] = h
                fpp = _sample(model.value, point + ei + ej)
                fpm = _sample(model.value, point + ei - ej)
                fmp = _sample(model.value, point - ei + ej)
                fmm = _sample(model.value, point - ei - ej)
                A[i, j] = (fpp - fpm - fmp + fmm) / (4.0 * h * h)
    else:
        A = _central(lambda p: model.evaluate(p).gradient, point, h)
    return 0.5 * (A + A.T)


def fd_third(model: ObjectiveModel, x, h: float = THIRD_STEP) -> np.ndarray:
    """Stack whose entry k is (H(x + h e_k) - H(x - h e_k)) / 2h."""
    point = as_point(x, model.dimension)
    return _central(lambda p: model.evaluate(p).hessian, point, h)


def fd_jacobian(field: Callable[[np.ndarray], np.ndarray], x, h: float = THIRD_STEP) -> np.ndarray:
    """Jacobian J[i, j] = dF_i / dx_j of a vector field by central differences."""
    point = as_point(x)
    return _central(field, point, h).T


def fd_divergence(field: Callable[[np.ndarray], np.ndarray], x, h: float = THIRD_STEP) -> float:
    """Divergence of a vector field by central differences."""
    return float(np.trace(fd_jacobian(field, x, h)))


def unique_third_count(n: int) -> int:
    """Number of distinct third partial derivatives of a function of n variables."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return math.comb(n + 2, 3)
