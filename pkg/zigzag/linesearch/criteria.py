"""Point criteria minimized by the line searches."""
import numpy as np

from ..derivatives.models import ObjectiveModel
from ..newton.engine import evaluate_state


class ValueCriterion:
    """Objective value f(x)."""

    def __init__(self, model: ObjectiveModel):
        self.model = model

    def __call__(self, x: np.ndarray) -> float:
        return self.model.value(x)


class TauCheckCriterion:
    """Divergence criterion tau_check(x) = (tau(x) - 1)^2."""

    def __init__(self, model: ObjectiveModel):
        self.model = model

    def __call__(self, x: np.ndarray) -> float:
        return evaluate_state(self.model, x).tau_check


def value_criterion(model: ObjectiveModel) -> ValueCriterion:
    return ValueCriterion(model)


def tau_check_criterion(model: ObjectiveModel) -> TauCheckCriterion:
    return TauCheckCriterion(model)
