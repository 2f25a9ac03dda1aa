"""Evaluation contract for objective functions and their derivatives."""
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from ..errors import DimensionMismatchError, NonFiniteValueError

# value, gradient, hessian, third stack
RawDerivatives = Tuple[float, np.ndarray, np.ndarray, np.ndarray]


def as_point(coords, dimension: Optional[int] = None) -> np.ndarray:
    """
    Convert coordinates to a finite 1-D float array.

    Args:
        coords: Anything numpy can turn into a vector
        dimension: Expected length, if known

    Returns:
        A fresh float64 array of shape (n,)
    """
    point = np.array(coords, dtype=float).reshape(-1)
    if point.size < 1:
        raise DimensionMismatchError("a point needs at least one coordinate")
    if dimension is not None and point.size != dimension:
        raise DimensionMismatchError(
            f"expected a point of dimension {dimension}, got {point.size}"
        )
    if not np.all(np.isfinite(point)):
        raise ValueError(f"point has non-finite coordinates: {point}")
    return point


@lru_cache(maxsize=None)
def _canonical_third_index(n: int) -> np.ndarray:
    """Flat index of the sorted-index entry for every (k, i, j) of an n^3 stack."""
    index = np.empty((n, n, n), dtype=np.intp)
    for k, i, j in itertools.product(range(n), repeat=3):
        a, b, c = sorted((k, i, j))
        index[k, i, j] = (a * n + b) * n + c
    index.setflags(write=False)
    return index


def symmetric_hessian(hessian: np.ndarray) -> np.ndarray:
    """Mirror the upper triangle so that H[i, j] == H[j, i] exactly."""
    return np.triu(hessian) + np.triu(hessian, 1).T


def symmetric_third(third: np.ndarray) -> np.ndarray:
    """Copy each sorted-index entry to all permutations of its indices."""
    n = third.shape[0]
    return third.reshape(-1)[_canonical_third_index(n)]


@dataclass(frozen=True)
class DerivativeBundle:
    """
    Value, gradient, Hessian and third-derivative stack at one point.

    third[k] is dH/dx_k; the stack is fully symmetric in its three indices.
    Use build() to construct bundles from formulas; it enforces the
    symmetry exactly.
    """

    value: float
    gradient: np.ndarray
    hessian: np.ndarray
    third: np.ndarray

    @classmethod
    def build(cls, value, gradient, hessian, third) -> "DerivativeBundle":
        gradient = np.asarray(gradient, dtype=float).reshape(-1)
        n = gradient.size
        hessian = np.asarray(hessian, dtype=float)
        third = np.asarray(third, dtype=float)
        if hessian.shape != (n, n) or third.shape != (n, n, n):
            raise DimensionMismatchError(
                f"inconsistent derivative shapes: gradient {gradient.shape}, "
                f"hessian {hessian.shape}, third {third.shape}"
            )
        return cls(
            value=float(value),
            gradient=gradient,
            hessian=symmetric_hessian(hessian),
            third=symmetric_third(third),
        )

    @property
    def dimension(self) -> int:
        return self.gradient.size

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.value)
            and np.all(np.isfinite(self.gradient))
            and np.all(np.isfinite(self.hessian))
            and np.all(np.isfinite(self.third))
        )


class ObjectiveModel(ABC):
    """
    A smooth scalar function with closed-form derivatives through third order.

    Subclasses implement derivatives(); evaluate() wraps it with point
    validation, exact symmetrization and a finiteness check. Models are
    immutable and picklable, so they can be shipped to worker processes.
    """

    name: str = "objective"

    def __init__(self, dimension: int):
        if dimension < 1:
            raise DimensionMismatchError(f"dimension must be positive, got {dimension}")
        self.dimension = dimension

    @property
    def params(self) -> Dict[str, float]:
        """Named real parameters of this model."""
        return {}

    @abstractmethod
    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        """Return (value, gradient, hessian, third) at a validated point."""

    def evaluate(self, x) -> DerivativeBundle:
        """
        Evaluate the full derivative bundle.

        Raises:
            DimensionMismatchError: x has the wrong length
            NonFiniteValueError: any entry of the bundle is not finite
        """
        point = as_point(x, self.dimension)
        bundle = DerivativeBundle.build(*self.derivatives(point))
        if not bundle.is_finite():
            raise NonFiniteValueError(f"{self.name}: non-finite derivatives at {point}")
        return bundle

    def value(self, x) -> float:
        """Function value only."""
        point = as_point(x, self.dimension)
        value = float(self.derivatives(point)[0])
        if not np.isfinite(value):
            raise NonFiniteValueError(f"{self.name}: non-finite value at {point}")
        return value

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{type(self).__name__}({params})"
