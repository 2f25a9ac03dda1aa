"""
Principal-eigenvector problem as a Lagrangian saddle search.

Maximizing the variance w^T C w on the unit sphere gives the Lagrangian
L(w, lambda) = 1/2 w^T C w + 1/2 lambda (1 - w^T w), whose stationary
points are the eigenpairs of C. Every stationary point is a saddle of L,
so plain Newton cannot tell them apart from the global optimum.
"""
import logging
from typing import List, Union

import numpy as np

from ..derivatives.models import ObjectiveModel, RawDerivatives
from ..driver.iteration import criterion_series
from ..driver.models import TrajectoryRecord
from ..errors import DimensionMismatchError
from ..objectives.functions import Quadratic
from .models import ConstrainedProblem, EigenProblem, EigenRunRecord

logger = logging.getLogger(__name__)

LAMBDA_START_RANGE = (0.0, 100.0)

SeedLike = Union[int, np.random.SeedSequence]


def _generator(seed: SeedLike) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def build_eigen_problem(n: int, seed: int) -> EigenProblem:
    """
    Draw a random covariance matrix with spectrum 1, 2, 4, ..., 2^(n-1).

    The rotation is the Q factor of a QR decomposition of a standard normal
    matrix, with column signs fixed so R has a positive diagonal. The same
    (n, seed) always gives the same C.
    """
    if n < 2:
        raise DimensionMismatchError(f"eigen problem needs n >= 2, got {n}")
    rng = _generator(seed)
    A = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(A)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    Q = Q * signs
    spectrum = 2.0 ** np.arange(n)
    C = Q @ np.diag(spectrum) @ Q.T
    C = 0.5 * (C + C.T)
    logger.debug(f"Built eigen problem n={n}, seed={seed}")
    return EigenProblem(n=n, C=C, spectrum=spectrum, Q=Q, seed=seed)


class EigenModel(ObjectiveModel):
    """Closed-form Lagrangian of the eigen problem over z = (w, lambda)."""

    def __init__(self, C: np.ndarray):
        C = np.asarray(C, dtype=float)
        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise DimensionMismatchError(f"C must be square, got {C.shape}")
        super().__init__(C.shape[0] + 1)
        self.C = C
        self.name = f"Eigen-{C.shape[0]}"

    def derivatives(self, z: np.ndarray) -> RawDerivatives:
        n = self.dimension - 1
        w, lam = z[:n], z[n]
        Cw = self.C @ w
        ww = float(w @ w)

        value = 0.5 * float(w @ Cw) + 0.5 * lam * (1.0 - ww)
        gradient = np.append(Cw - lam * w, 0.5 * (1.0 - ww))

        hessian = np.zeros((n + 1, n + 1))
        hessian[:n, :n] = self.C - lam * np.eye(n)
        hessian[:n, n] = -w
        hessian[n, :n] = -w

        third = np.zeros((n + 1, n + 1, n + 1))
        k = np.arange(n)
        third[k, k, n] = -1.0
        third[k, n, k] = -1.0
        third[n, k, k] = -1.0
        return value, gradient, hessian, third


def eigen_model(problem: EigenProblem) -> EigenModel:
    return EigenModel(problem.C)


class UnitSphereConstraint(ObjectiveModel):
    """g(w) = 1/2 (1 - w^T w)."""

    def __init__(self, n: int):
        super().__init__(n)
        self.name = "UnitSphere"

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        n = self.dimension
        return 0.5 * (1.0 - float(x @ x)), -x, -np.eye(n), np.zeros((n, n, n))


def eigen_constrained_problem(problem: EigenProblem) -> ConstrainedProblem:
    """The eigen problem in general form, for use with lagrangian_model."""
    objective = Quadratic(np.zeros(problem.n), problem.C)
    return ConstrainedProblem(objective=objective, constraints=[UnitSphereConstraint(problem.n)])


def sample_start(problem: EigenProblem, seed: SeedLike) -> np.ndarray:
    """Start point with w ~ U[-1, 1]^n and lambda ~ U[0, 100]."""
    rng = _generator(seed)
    w = rng.uniform(-1.0, 1.0, problem.n)
    lam = rng.uniform(*LAMBDA_START_RANGE)
    return np.append(w, lam)


def sample_starts(problem: EigenProblem, seed: int, count: int) -> List[np.ndarray]:
    """Independent start points from spawned child seeds."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [sample_start(problem, child) for child in children]


def nearest_eigenvalue(problem: EigenProblem, lam: float) -> float:
    """Closest member of the spectrum to a converged multiplier."""
    return float(problem.spectrum[np.argmin(np.abs(problem.spectrum - lam))])


def eigen_run_record(
    problem: EigenProblem, trajectory: TrajectoryRecord, model: ObjectiveModel
) -> EigenRunRecord:
    """Summarize a finished eigen run: final multiplier, |w| and eigenpair match."""
    final = np.asarray(trajectory.iterates[-1])
    final_lambda = w_norm = nearest = relative_error = None
    if trajectory.converged:
        final_lambda = float(final[-1])
        w_norm = float(np.linalg.norm(final[:-1]))
        nearest = nearest_eigenvalue(problem, final_lambda)
        relative_error = abs(final_lambda - nearest) / nearest
    return EigenRunRecord(
        run_id=trajectory.run_id,
        n=problem.n,
        seed=problem.seed,
        start=trajectory.start,
        outcome=trajectory.outcome,
        strategy_string=trajectory.strategy_string,
        steps_taken=trajectory.steps_taken,
        final_lambda=final_lambda,
        w_norm=w_norm,
        nearest_eigenvalue=nearest,
        lambda_relative_error=relative_error,
        criterion_series=criterion_series(trajectory, model),
    )
