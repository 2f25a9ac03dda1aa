"""Newton step, divergence criterion, pullback directions and determinant."""
from .engine import (
    HessianFactorization,
    det_gradient,
    det_hessian,
    evaluate_state,
    factorize,
    inverse_hessian_derivative,
    newton_jacobian,
    newton_step,
    pullback_p,
    pullback_q,
    pullback_vectors,
    tau,
    tau_check,
)
from .models import NewtonState, PullbackDirection

__all__ = [
    "HessianFactorization",
    "NewtonState",
    "PullbackDirection",
    "det_gradient",
    "det_hessian",
    "evaluate_state",
    "factorize",
    "inverse_hessian_derivative",
    "newton_jacobian",
    "newton_step",
    "pullback_p",
    "pullback_q",
    "pullback_vectors",
    "tau",
    "tau_check",
]
