"""The outer Newton iteration, final classification and batch runs."""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from shared.worker_pool import TaskResult, WorkerPool

from ..derivatives.models import ObjectiveModel, as_point
from ..errors import ZigzagError
from ..linesearch.criteria import tau_check_criterion
from ..linesearch.models import Strategy, ZigzagConfig
from ..linesearch.searches import safe_evaluate
from ..linesearch.strategies import strategy_step
from ..newton.engine import evaluate_state
from .models import AlphaLogRecord, Outcome, RunLimits, TrajectoryRecord

logger = logging.getLogger(__name__)

DEGENERACY_RATIO = 1e-8


@dataclass(frozen=True)
class Classification:
    outcome: Outcome
    degenerate: bool = False


def classify(hessian: np.ndarray) -> Classification:
    """
    Classify a stationary point by the signs of the Hessian eigenvalues.

    Eigenvalues with |lambda| <= 1e-8 max|lambda| make the point a
    degenerate saddle.
    """
    eigenvalues = np.linalg.eigvalsh(np.asarray(hessian, dtype=float))
    scale = float(np.max(np.abs(eigenvalues)))
    if scale == 0.0 or np.any(np.abs(eigenvalues) <= DEGENERACY_RATIO * scale):
        return Classification(Outcome.SADDLE, degenerate=True)
    if np.all(eigenvalues > 0):
        return Classification(Outcome.MINIMUM)
    if np.all(eigenvalues < 0):
        return Classification(Outcome.MAXIMUM)
    return Classification(Outcome.SADDLE)


def run(
    model: ObjectiveModel,
    start,
    strategy: Strategy,
    cfg: Optional[ZigzagConfig] = None,
    limits: Optional[RunLimits] = None,
    run_id: Optional[str] = None,
) -> TrajectoryRecord:
    """
    Iterate strategy steps from start until a termination rule fires.

    The loop stops when the Newton step vanishes, when a step moves less
    than limits.step_tolerance, after limits.max_steps steps, or when an
    iterate cannot be evaluated (singular Hessian, non-finite values).
    Success is judged by the final gradient norm alone.

    Args:
        model: Objective model
        start: Start point
        strategy: Strategy name
        cfg: Strategy configuration (defaults)
        limits: Termination rules (defaults)
        run_id: Identifier stored on the record

    Returns:
        The trajectory record
    """
    strategy = Strategy(strategy)
    cfg = cfg or ZigzagConfig()
    limits = limits or RunLimits()
    x = as_point(start, model.dimension)
    run_id = run_id or f"{model.name}:{strategy.value}:0"

    iterates = [x]
    identifiers: List[str] = []
    sections = []
    diagnostic = None

    for step in range(limits.max_steps):
        try:
            state = evaluate_state(model, x)
        except ZigzagError as e:
            diagnostic = f"step {step}: {type(e).__name__}: {e}"
            break
        if np.linalg.norm(state.nu) <= limits.zero_step_tolerance:
            break
        try:
            outcome = strategy_step(strategy, model, x, cfg, state)
        except ZigzagError as e:
            diagnostic = f"step {step}: {type(e).__name__}: {e}"
            break
        if not np.all(np.isfinite(outcome.next)):
            diagnostic = f"step {step}: non-finite iterate"
            break

        iterates.append(np.asarray(outcome.next, dtype=float))
        identifiers.append(outcome.identifier)
        sections.append(outcome.sections)
        moved = float(np.linalg.norm(outcome.next - x))
        x = iterates[-1]
        if moved < limits.step_tolerance:
            break

    result, gradient_norm = _final_classification(model, x, limits)
    if diagnostic and result.outcome is Outcome.FAILURE:
        logger.debug(f"Run {run_id} failed: {diagnostic}")

    return TrajectoryRecord(
        run_id=run_id,
        function=model.name,
        strategy=strategy.value,
        start=[float(c) for c in iterates[0]],
        iterates=[[float(c) for c in p] for p in iterates],
        identifiers=identifiers,
        strategy_string="".join(identifiers),
        outcome=result.outcome,
        degenerate=result.degenerate,
        final_gradient_norm=gradient_norm,
        steps_taken=len(iterates) - 1,
        diagnostic=diagnostic,
        sections_per_step=sections,
    )


def _final_classification(
    model: ObjectiveModel, x: np.ndarray, limits: RunLimits
) -> Tuple[Classification, Optional[float]]:
    try:
        bundle = model.evaluate(x)
    except ZigzagError:
        return Classification(Outcome.FAILURE), None
    gradient_norm = float(np.linalg.norm(bundle.gradient))
    if not math.isfinite(gradient_norm):
        return Classification(Outcome.FAILURE), None
    if gradient_norm > limits.gradient_tolerance:
        return Classification(Outcome.FAILURE), gradient_norm
    return classify(bundle.hessian), gradient_norm


def alpha_logs(record: TrajectoryRecord) -> List[AlphaLogRecord]:
    """Split a trajectory's per-step sections into alpha-log records."""
    return [
        AlphaLogRecord(run_id=record.run_id, step=step, identifier=identifier, sections=sections)
        for step, (identifier, sections) in enumerate(
            zip(record.identifiers, record.sections_per_step)
        )
    ]


def criterion_series(record: TrajectoryRecord, model: ObjectiveModel) -> List[Optional[float]]:
    """tau_check at every iterate (None where it cannot be evaluated)."""
    criterion = tau_check_criterion(model)
    return [safe_evaluate(criterion, np.asarray(p)) for p in record.iterates]


@dataclass(frozen=True)
class RunTask:
    """Picklable description of one run for the worker pool."""

    model: ObjectiveModel
    start: Tuple[float, ...]
    strategy: Strategy
    cfg: ZigzagConfig
    limits: RunLimits
    run_id: str


def execute_run_task(task: RunTask) -> TrajectoryRecord:
    return run(task.model, task.start, task.strategy, task.cfg, task.limits, task.run_id)


def run_batch(
    model: ObjectiveModel,
    starts: Sequence[Sequence[float]],
    strategy: Strategy,
    cfg: Optional[ZigzagConfig] = None,
    limits: Optional[RunLimits] = None,
    workers: int = 1,
) -> List[TaskResult[TrajectoryRecord]]:
    """
    Run one trajectory per start point, in parallel when workers > 1.

    Returns:
        One TaskResult per start, in start order; failed tasks carry the
        error message instead of a record
    """
    strategy = Strategy(strategy)
    cfg = cfg or ZigzagConfig()
    limits = limits or RunLimits()
    tasks = [
        RunTask(
            model=model,
            start=tuple(float(c) for c in start),
            strategy=strategy,
            cfg=cfg,
            limits=limits,
            run_id=f"{model.name}:{strategy.value}:{index}",
        )
        for index, start in enumerate(starts)
    ]
    logger.info(f"Starting batch: {model.name}, {strategy.value}, {len(tasks)} starts")
    results = WorkerPool(workers).map(execute_run_task, tasks)
    succeeded = sum(1 for r in results if r.ok and r.value.converged)
    logger.info(f"Batch finished: {succeeded}/{len(tasks)} runs converged")
    return results
