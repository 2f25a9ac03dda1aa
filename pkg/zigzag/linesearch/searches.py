"""One-dimensional searches along a Newton direction."""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..errors import SearchFailureError, ZigzagError
from .models import AlphaSample, AlphaSection, SectionPhase

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

Criterion = Callable[[np.ndarray], float]


def safe_evaluate(func: Callable, arg) -> Optional[float]:
    """Evaluate a criterion, mapping library errors and non-finite results to None."""
    try:
        value = float(func(arg))
    except (ZigzagError, ArithmeticError, ValueError) as e:
        logger.debug(f"Criterion evaluation failed: {str(e)}")
        return None
    return value if math.isfinite(value) else None


def explicit_search(
    criterion: Criterion,
    x: np.ndarray,
    nu: np.ndarray,
    steps: int = 100,
    phase: SectionPhase = SectionPhase.EXPLICIT,
) -> AlphaSection:
    """
    Sample criterion(x + alpha nu) at alpha = k / steps for k = 0..steps.

    Args:
        criterion: Point criterion (the model is bound into it)
        x: Start point
        nu: Newton step, nonzero
        steps: Number of intervals on [0, 1]
        phase: Phase recorded on the returned section

    Returns:
        Section whose chosen_alpha is the sampled argmin (smallest alpha on ties)

    Raises:
        SearchFailureError: every sample failed
    """
    if not np.any(nu):
        raise ValueError("explicit search needs a nonzero direction")
    samples: List[AlphaSample] = []
    best_alpha, best_value = None, math.inf
    for k in range(steps + 1):
        alpha = k / steps
        value = safe_evaluate(criterion, x + alpha * nu)
        samples.append(AlphaSample(alpha=alpha, criterion=value))
        if value is not None and value < best_value:
            best_alpha, best_value = alpha, value
    if best_alpha is None:
        raise SearchFailureError(f"all {steps + 1} explicit-search samples failed")
    return AlphaSection(phase=phase, samples=samples, chosen_alpha=best_alpha)


@dataclass(frozen=True)
class GoldenResult:
    alpha: float
    value: float
    samples: List[Tuple[float, Optional[float]]]


class _Budget:
    """Counts evaluations and tracks the best sample seen."""

    def __init__(self, func: Callable[[float], float], max_steps: int):
        self.func = func
        self.max_steps = max_steps
        self.samples: List[Tuple[float, Optional[float]]] = []
        self.best_alpha: Optional[float] = None
        self.best_value = math.inf

    @property
    def exhausted(self) -> bool:
        return len(self.samples) >= self.max_steps

    def __call__(self, alpha: float) -> float:
        value = safe_evaluate(self.func, alpha)
        self.samples.append((alpha, value))
        if value is None:
            return math.inf
        if value < self.best_value:
            self.best_alpha, self.best_value = alpha, value
        return value


def golden_section_search(
    criterion_1d: Callable[[float], float],
    bracket: Tuple[float, float],
    max_steps: int = 100,
    tol: float = 1e-3,
) -> GoldenResult:
    """
    Golden Section minimization with bracket expansion.

    Starting from [lo, hi], the step from the worse endpoint to the better
    one is doubled until the criterion rises again; the resulting
    three-point bracket is then reduced by golden-ratio sections until it
    is narrower than tol. Non-finite values count as +inf. At most
    max_steps evaluations are spent; the best sample seen is returned.

    Raises:
        SearchFailureError: no finite value was found
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket}")
    f = _Budget(criterion_1d, max(max_steps, 2))

    f_lo, f_hi = f(lo), f(hi)
    if math.isinf(f_lo) and math.isinf(f_hi):
        raise SearchFailureError(f"criterion not finite at either end of {bracket}")

    # b is the better endpoint, a the worse one.
    if f_lo <= f_hi:
        a, b, fb = hi, lo, f_lo
    else:
        a, b, fb = lo, hi, f_hi

    step = b - a
    c = b
    while not f.exhausted:
        step *= 2.0
        c = b + step
        fc = f(c)
        if fc >= fb:
            break
        a, b, fb = b, c, fc

    left, right = min(a, c), max(a, c)
    if not f.exhausted and right - left > tol:
        h = right - left
        x1 = left + INV_PHI_SQUARE * h
        x2 = left + INV_PHI * h
        f1, f2 = f(x1), f(x2)
        while h > tol and not f.exhausted:
            if f1 < f2:
                right, x2, f2 = x2, x1, f1
                h = right - left
                x1 = left + INV_PHI_SQUARE * h
                f1 = f(x1)
            else:
                left, x1, f1 = x1, x2, f2
                h = right - left
                x2 = left + INV_PHI * h
                f2 = f(x2)

    if f.best_alpha is None:
        raise SearchFailureError("golden section found no finite criterion value")
    return GoldenResult(alpha=f.best_alpha, value=f.best_value, samples=f.samples)


def golden_section(
    criterion_1d: Callable[[float], float],
    bracket: Tuple[float, float],
    max_steps: int = 100,
    tol: float = 1e-3,
) -> float:
    """Minimizing alpha of criterion_1d; see golden_section_search."""
    return golden_section_search(criterion_1d, bracket, max_steps, tol).alpha
