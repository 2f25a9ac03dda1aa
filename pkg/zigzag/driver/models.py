"""Records and limits for Newton iterations."""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from shared.records import BaseRecord, RecordType, register_record

from ..linesearch.models import AlphaSection


class Outcome(str, Enum):
    """Classification of the final iterate."""
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    SADDLE = "saddle"
    FAILURE = "failure"


class RunLimits(BaseModel):
    """Termination rules of the outer iteration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_steps: int = Field(default=100, gt=0)
    step_tolerance: float = Field(default=1e-5, gt=0)  # stop when |x_next - x| is below
    gradient_tolerance: float = Field(default=1e-5, gt=0)  # success threshold
    zero_step_tolerance: float = Field(default=1e-14, ge=0)  # |nu| treated as zero


@register_record(RecordType.TRAJECTORY)
class TrajectoryRecord(BaseRecord):
    """One run of the outer Newton iteration."""

    record_type: RecordType = RecordType.TRAJECTORY
    function: str
    strategy: str
    start: List[float]
    iterates: List[List[float]]
    identifiers: List[str] = Field(default_factory=list)
    strategy_string: str = ""
    outcome: Outcome
    degenerate: bool = False
    final_gradient_norm: Optional[float] = None
    steps_taken: int
    diagnostic: Optional[str] = None
    sections_per_step: List[List[AlphaSection]] = Field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.outcome is not Outcome.FAILURE


@register_record(RecordType.ALPHA_LOG)
class AlphaLogRecord(BaseRecord):
    """Criterion-over-alpha log of one strategy step."""

    record_type: RecordType = RecordType.ALPHA_LOG
    step: int
    identifier: str
    sections: List[AlphaSection]
