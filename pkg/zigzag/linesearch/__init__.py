"""Line-search strategies: plain, explicit value search and zigzag on tau_check."""
from .criteria import TauCheckCriterion, ValueCriterion, tau_check_criterion, value_criterion
from .models import (
    IDENTIFIER_PATTERN,
    AlphaSample,
    AlphaSection,
    SectionPhase,
    StepOutcome,
    Strategy,
    ZigzagConfig,
)
from .searches import explicit_search, golden_section, golden_section_search
from .strategies import strategy_step
from .zigzag import coarse_local_minima, down_phase, line_angle, zag_phase, zig_phase

__all__ = [
    "IDENTIFIER_PATTERN",
    "AlphaSample",
    "AlphaSection",
    "SectionPhase",
    "StepOutcome",
    "Strategy",
    "TauCheckCriterion",
    "ValueCriterion",
    "ZigzagConfig",
    "coarse_local_minima",
    "down_phase",
    "explicit_search",
    "golden_section",
    "golden_section_search",
    "line_angle",
    "strategy_step",
    "tau_check_criterion",
    "value_criterion",
    "zag_phase",
    "zig_phase",
]
