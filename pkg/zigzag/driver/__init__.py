"""Outer Newton iteration, classification and trajectory records."""
from .iteration import (
    Classification,
    alpha_logs,
    classify,
    criterion_series,
    run,
    run_batch,
)
from .models import AlphaLogRecord, Outcome, RunLimits, TrajectoryRecord

__all__ = [
    "AlphaLogRecord",
    "Classification",
    "Outcome",
    "RunLimits",
    "TrajectoryRecord",
    "alpha_logs",
    "classify",
    "criterion_series",
    "run",
    "run_batch",
]
