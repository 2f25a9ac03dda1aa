"""Domain types for equality-constrained problems."""
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from pydantic import Field

from shared.records import BaseRecord, RecordType, register_record

from ..derivatives.models import ObjectiveModel
from ..driver.models import Outcome
from ..errors import DimensionMismatchError


@dataclass(frozen=True)
class ConstrainedProblem:
    """Minimize objective(x) subject to constraint_k(x) = 0, k = 1..m."""

    objective: ObjectiveModel
    constraints: List[ObjectiveModel] = field(default_factory=list)

    def __post_init__(self):
        n = self.objective.dimension
        if not 1 <= len(self.constraints) <= n:
            raise DimensionMismatchError(
                f"need 1 <= m <= n constraints, got m={len(self.constraints)}, n={n}"
            )
        for g in self.constraints:
            if g.dimension != n:
                raise DimensionMismatchError(
                    f"constraint {g.name} has dimension {g.dimension}, objective has {n}"
                )

    @property
    def n(self) -> int:
        return self.objective.dimension

    @property
    def m(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class EigenProblem:
    """Covariance matrix C = Q diag(spectrum) Q^T with a doubling spectrum."""

    n: int
    C: np.ndarray
    spectrum: np.ndarray
    Q: np.ndarray
    seed: int


@register_record(RecordType.EIGEN_RUN)
class EigenRunRecord(BaseRecord):
    """Summary of one eigen-experiment run."""

    record_type: RecordType = RecordType.EIGEN_RUN
    n: int
    seed: int
    start: List[float]
    outcome: Outcome
    strategy_string: str
    steps_taken: int
    final_lambda: Optional[float] = None
    w_norm: Optional[float] = None
    nearest_eigenvalue: Optional[float] = None
    lambda_relative_error: Optional[float] = None
    criterion_series: List[Optional[float]] = Field(default_factory=list)  # tau_check per iterate

    @property
    def converged(self) -> bool:
        return self.outcome is not Outcome.FAILURE
