"""Domain types for one Newton iteration."""
from dataclasses import dataclass

import numpy as np

from ..derivatives.models import DerivativeBundle


@dataclass(frozen=True)
class NewtonState:
    """
    A point plus everything derived from it for one iteration.

    tau_check is (tau - 1)^2 and nu solves hess @ nu = -gamma.
    """

    x: np.ndarray
    bundle: DerivativeBundle
    nu: np.ndarray
    tau: float
    tau_check: float
    det_hess: float

    @property
    def gamma(self) -> np.ndarray:
        return self.bundle.gradient

    @property
    def hess(self) -> np.ndarray:
        return self.bundle.hessian

    @property
    def value(self) -> float:
        return self.bundle.value


@dataclass(frozen=True)
class PullbackDirection:
    """Unit direction back towards the ravine bottom; its sign carries no meaning."""

    dir: np.ndarray
    raw_norm: float
