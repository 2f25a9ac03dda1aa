"""Domain types for the line-search strategies."""
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

IDENTIFIER_PATTERN = re.compile(r"^(N|F|D-?|[\^A]v?|U|P)$")


class Strategy(str, Enum):
    """Line-search strategies, named S<step>-M<method>-C<criterion>."""

    SNO_MNO = "Sno-Mno-Cval2"  # full Newton step
    SNO_MEX = "Sno-Mex-Cval2"  # explicit search on the function value
    SZZ = "Szz-Mlm-Ctau"  # zigzag on tau_check
    SZZP = "Szzp-Mlm-Ctau"  # zigzag with parallelity check

    @property
    def is_zigzag(self) -> bool:
        return self in (Strategy.SZZ, Strategy.SZZP)


class SectionPhase(str, Enum):
    """Which part of a step produced an alpha section."""
    DOWN_COARSE = "down-coarse"
    DOWN_REFINE = "down-refine"
    ZIG = "zig"
    ZAG = "zag"
    PLAIN = "plain"
    EXPLICIT = "explicit"


class ZigzagConfig(BaseModel):
    """Thresholds and search parameters of the line-search strategies."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    entry_threshold: float = Field(default=1e-3, gt=0)
    escape_threshold: float = Field(default=1e-1, gt=0)
    parallelity_angle: float = Field(default=0.2, gt=0)  # radians
    explicit_steps: int = Field(default=100, gt=0)
    golden_bracket: float = Field(default=1e-5, gt=0)  # initial bracket [-b, b]
    golden_max_steps: int = Field(default=100, gt=0)
    golden_tolerance: float = Field(default=1e-3, gt=0)
    refine_alpha_limit: float = Field(default=1e-1, gt=0)
    parallelity_enabled: Optional[bool] = None  # None: follow the strategy name

    @model_validator(mode="after")
    def check_thresholds(self) -> "ZigzagConfig":
        if not self.entry_threshold < self.escape_threshold:
            raise ValueError(
                f"entry_threshold ({self.entry_threshold}) must be below "
                f"escape_threshold ({self.escape_threshold})"
            )
        return self

    def parallelity_for(self, strategy: Strategy) -> bool:
        if self.parallelity_enabled is not None:
            return self.parallelity_enabled
        return strategy is Strategy.SZZP


class AlphaSample(BaseModel):
    """One criterion sample; criterion is None where evaluation failed."""

    alpha: float
    criterion: Optional[float] = Field(default=None, allow_inf_nan=False)


class AlphaSection(BaseModel):
    """
    Criterion samples along one line.

    For zag sections the alphas are sign-normalized so that chosen_alpha is
    nonnegative; the geometry itself is not affected.
    """

    phase: SectionPhase
    samples: List[AlphaSample]
    chosen_alpha: float
    base_alpha: float = 0.0  # coarse alpha a refinement started from

    @model_validator(mode="after")
    def check_samples(self) -> "AlphaSection":
        if not self.samples:
            raise ValueError("an alpha section needs at least one sample")
        return self


@dataclass(frozen=True)
class StepOutcome:
    """Result of one strategy step."""

    next: np.ndarray
    identifier: str
    sections: List[AlphaSection] = field(default_factory=list)
