"""
Newton step, divergence criterion and pullback directions.

All quantities share one pivoted LU factorization of the Hessian. The
Hessian inverse is never used to solve for the Newton step; it is only
formed densely for the pullback extractions in small dimensions.
"""
import logging
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from ..derivatives.models import DerivativeBundle, ObjectiveModel
from ..errors import SingularHessianError, ZeroDirectionError
from .models import NewtonState, PullbackDirection

logger = logging.getLogger(__name__)

SINGULARITY_RATIO = 1e-12
ZERO_DIRECTION_NORM = 1e-12
DENSE_INVERSE_LIMIT = 16


def _lu(matrix: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        return lu_factor(matrix, check_finite=False)


def _lu_determinant(lu: np.ndarray, piv: np.ndarray) -> float:
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    sign = -1.0 if swaps % 2 else 1.0
    return float(sign * np.prod(np.diag(lu)))


@dataclass(frozen=True)
class HessianFactorization:
    """Pivoted LU factors of a Hessian known to be numerically nonsingular."""

    lu: np.ndarray
    piv: np.ndarray

    @property
    def dimension(self) -> int:
        return self.piv.size

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return lu_solve((self.lu, self.piv), rhs, check_finite=False)

    def inverse(self) -> np.ndarray:
        return self.solve(np.eye(self.dimension))

    @property
    def det(self) -> float:
        return _lu_determinant(self.lu, self.piv)


def factorize(hessian: np.ndarray) -> HessianFactorization:
    """
    Factorize a Hessian, rejecting numerically singular matrices.

    Raises:
        SingularHessianError: some pivot is at most 1e-12 * max|H|
    """
    H = np.asarray(hessian, dtype=float)
    scale = float(np.max(np.abs(H))) if H.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        raise SingularHessianError("Hessian is zero or non-finite")
    lu, piv = _lu(H)
    smallest = float(np.min(np.abs(np.diag(lu))))
    if not smallest > SINGULARITY_RATIO * scale:
        raise SingularHessianError(
            f"Hessian pivot {smallest:.3e} below {SINGULARITY_RATIO:g} x {scale:.3e}"
        )
    return HessianFactorization(lu=lu, piv=piv)


def _factors(bundle: DerivativeBundle, factorization: Optional[HessianFactorization]):
    return factorization if factorization is not None else factorize(bundle.hessian)


def newton_step(
    bundle: DerivativeBundle, factorization: Optional[HessianFactorization] = None
) -> np.ndarray:
    """Newton step nu = -H^{-1} gamma."""
    return -_factors(bundle, factorization).solve(bundle.gradient)


def _directional_third(bundle: DerivativeBundle, nu: np.ndarray) -> np.ndarray:
    """Matrix A with rows A[i] = (dH/dx_i) nu."""
    return bundle.third @ nu


def tau(
    bundle: DerivativeBundle,
    nu: np.ndarray,
    factorization: Optional[HessianFactorization] = None,
) -> float:
    """
    Divergence criterion tau = 1 + (1/n) sum_i (H^{-1})_{i,*} (dH/dx_i) nu.

    Equals 1 on purely quadratic functions and at stationary points.
    """
    F = _factors(bundle, factorization)
    A = _directional_third(bundle, nu)
    return 1.0 + float(np.trace(F.solve(A.T))) / bundle.dimension


def tau_check(tau_value: float) -> float:
    """Line-search criterion (tau - 1)^2, zero on ravine bottoms."""
    return (tau_value - 1.0) ** 2


def newton_jacobian(
    bundle: DerivativeBundle,
    nu: np.ndarray,
    factorization: Optional[HessianFactorization] = None,
) -> np.ndarray:
    """
    Jacobian of the Newton-step field x -> nu(x).

    N = -I - H^{-1} B with column j of B equal to (dH/dx_j) nu; its trace
    divided by -n equals tau.
    """
    F = _factors(bundle, factorization)
    B = _directional_third(bundle, nu).T
    return -np.eye(bundle.dimension) - F.solve(B)


def inverse_hessian_derivative(
    bundle: DerivativeBundle,
    k: int,
    factorization: Optional[HessianFactorization] = None,
) -> np.ndarray:
    """d(H^{-1})/dx_k = -H^{-1} (dH/dx_k) H^{-1}."""
    F = _factors(bundle, factorization)
    Y = F.solve(bundle.third[k])
    return -F.solve(Y.T).T


def _inverse_products(bundle: DerivativeBundle, F: HessianFactorization) -> np.ndarray:
    """Stack Y[k] = H^{-1} (dH/dx_k)."""
    return np.stack([F.solve(Tk) for Tk in bundle.third])


def _raw_p(bundle: DerivativeBundle, F: HessianFactorization) -> np.ndarray:
    if bundle.dimension <= DENSE_INVERSE_LIMIT:
        return np.einsum("ijk,ki->j", bundle.third, F.inverse())
    return np.einsum("iij->j", _inverse_products(bundle, F))


def _raw_q(bundle: DerivativeBundle, F: HessianFactorization) -> np.ndarray:
    if bundle.dimension <= DENSE_INVERSE_LIMIT:
        return np.einsum("ij,kji->k", F.inverse(), bundle.third)
    return np.einsum("kii->k", _inverse_products(bundle, F))


def pullback_vectors(
    bundle: DerivativeBundle, factorization: Optional[HessianFactorization] = None
):
    """
    Unnormalized pullback vectors (p~, q~).

    p~ = sum_i (dH/dx_i) (H^{-1})_{*,i}; q~_k = trace(H^{-1} dH/dx_k).
    """
    F = _factors(bundle, factorization)
    return _raw_p(bundle, F), _raw_q(bundle, F)


def _normalize(raw: np.ndarray, label: str) -> PullbackDirection:
    norm = float(np.linalg.norm(raw))
    if not norm > ZERO_DIRECTION_NORM:
        raise ZeroDirectionError(f"pullback vector {label} has norm {norm:.3e}")
    return PullbackDirection(dir=raw / norm, raw_norm=norm)


def pullback_p(
    bundle: DerivativeBundle, factorization: Optional[HessianFactorization] = None
) -> PullbackDirection:
    """Pullback direction from the row-extraction form p~."""
    return _normalize(_raw_p(bundle, _factors(bundle, factorization)), "p")


def pullback_q(
    bundle: DerivativeBundle, factorization: Optional[HessianFactorization] = None
) -> PullbackDirection:
    """Pullback direction from the trace form q~ (proportional to grad det H)."""
    return _normalize(_raw_q(bundle, _factors(bundle, factorization)), "q")


def det_hessian(bundle: DerivativeBundle) -> float:
    """Determinant of the Hessian from its LU factors; no singularity check."""
    H = bundle.hessian
    if not np.any(H):
        return 0.0
    lu, piv = _lu(H)
    return _lu_determinant(lu, piv)


def det_gradient(
    bundle: DerivativeBundle, factorization: Optional[HessianFactorization] = None
) -> np.ndarray:
    """Gradient of det H by Jacobi's formula: det(H) q~."""
    F = _factors(bundle, factorization)
    return F.det * _raw_q(bundle, F)


def evaluate_state(model: ObjectiveModel, x) -> NewtonState:
    """
    Evaluate a model and derive the Newton quantities from one factorization.

    Raises:
        SingularHessianError: Hessian is numerically singular at x
        NonFiniteValueError: model is not finite at x
    """
    bundle = model.evaluate(x)
    F = factorize(bundle.hessian)
    nu = newton_step(bundle, F)
    t = tau(bundle, nu, F)
    return NewtonState(
        x=np.array(x, dtype=float).reshape(-1),
        bundle=bundle,
        nu=nu,
        tau=t,
        tau_check=tau_check(t),
        det_hess=F.det,
    )
