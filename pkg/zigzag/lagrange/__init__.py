"""Newton on Lagrangians of equality-constrained problems."""
from .eigen import (
    EigenModel,
    UnitSphereConstraint,
    build_eigen_problem,
    eigen_constrained_problem,
    eigen_run_record,
    eigen_model,
    nearest_eigenvalue,
    sample_start,
    sample_starts,
)
from .lagrangian import LagrangianModel, indefiniteness_check, lagrangian_model
from .models import ConstrainedProblem, EigenProblem, EigenRunRecord

__all__ = [
    "ConstrainedProblem",
    "EigenModel",
    "EigenProblem",
    "EigenRunRecord",
    "LagrangianModel",
    "UnitSphereConstraint",
    "build_eigen_problem",
    "eigen_constrained_problem",
    "eigen_run_record",
    "eigen_model",
    "indefiniteness_check",
    "lagrangian_model",
    "nearest_eigenvalue",
    "sample_start",
    "sample_starts",
]
