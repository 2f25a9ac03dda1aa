"""Lagrangian of an equality-constrained problem over z = (x, lambda)."""
import logging
from typing import Optional

import numpy as np

from ..derivatives.models import ObjectiveModel, RawDerivatives
from ..errors import DimensionMismatchError, SingularHessianError
from ..newton.engine import factorize
from .models import ConstrainedProblem

logger = logging.getLogger(__name__)


class LagrangianModel(ObjectiveModel):
    """
    L(x, lambda) = f(x) + lambda^T g(x) with the bordered Hessian.

    The third stack has three kinds of nonzero entries: all-x entries
    (third derivatives of f plus lambda-weighted ones of g), and entries
    with exactly one lambda index, which equal the Hessian of the matching
    constraint. Entries with two or more lambda indices vanish.
    """

    def __init__(self, problem: ConstrainedProblem):
        super().__init__(problem.n + problem.m)
        self.problem = problem
        self.name = f"Lagrangian({problem.objective.name})"

    def derivatives(self, z: np.ndarray) -> RawDerivatives:
        n, m = self.problem.n, self.problem.m
        x, lam = z[:n], z[n:]
        f = self.problem.objective.evaluate(x)
        gs = [g.evaluate(x) for g in self.problem.constraints]

        N = n + m
        gradient = np.empty(N)
        hessian = np.zeros((N, N))
        third = np.zeros((N, N, N))

        gradient[:n] = f.gradient + sum(lk * g.gradient for lk, g in zip(lam, gs))
        gradient[n:] = [g.value for g in gs]

        hessian[:n, :n] = f.hessian + sum(lk * g.hessian for lk, g in zip(lam, gs))
        third[:n, :n, :n] = f.third + sum(lk * g.third for lk, g in zip(lam, gs))
        for k, g in enumerate(gs):
            hessian[:n, n + k] = g.gradient
            hessian[n + k, :n] = g.gradient
            third[:n, :n, n + k] = g.hessian
            third[:n, n + k, :n] = g.hessian
            third[n + k, :n, :n] = g.hessian

        value = f.value + float(lam @ gradient[n:])
        return value, gradient, hessian, third


def lagrangian_model(problem: ConstrainedProblem) -> LagrangianModel:
    return LagrangianModel(problem)


def indefiniteness_check(hessian: np.ndarray, m: int, direction) -> Optional[bool]:
    """
    Check that a bordered Hessian is indefinite.

    Verifies z^T H z = 0 for z = (0_n, u) and that the spectrum has both
    signs.

    Args:
        hessian: Bordered Hessian of size (n + m)
        m: Number of constraints (size of the zero block)
        direction: Nonzero vector u of length m

    Returns:
        True or False, or None when H is singular (inconclusive)
    """
    if m < 1:
        raise ValueError("indefiniteness check needs at least one constraint (m >= 1)")
    H = np.asarray(hessian, dtype=float)
    u = np.asarray(direction, dtype=float).reshape(-1)
    if u.size != m or H.shape[0] != H.shape[1] or H.shape[0] <= m:
        raise DimensionMismatchError(f"direction of length {u.size} does not fit H {H.shape}, m={m}")
    if not np.any(u):
        raise ValueError("direction vector must be nonzero")

    try:
        factorize(H)
    except SingularHessianError:
        logger.debug("Bordered Hessian singular; indefiniteness inconclusive")
        return None

    z = np.concatenate([np.zeros(H.shape[0] - m), u])
    scale = float(np.max(np.abs(H))) * float(u @ u)
    vanishes = abs(float(z @ H @ z)) <= 1e-12 * scale
    eigenvalues = np.linalg.eigvalsh(H)
    return bool(vanishes and eigenvalues.min() < 0 < eigenvalues.max())
