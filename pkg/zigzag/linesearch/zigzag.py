"""
Phases of the zigzag line search on the divergence criterion.

A step starting outside a ravine (tau_check above the entry threshold)
runs the down phase: an explicit search along nu followed by Golden
Section refinement of its local minima. A step starting inside a ravine
zigs along nu until tau_check exceeds the escape threshold, then zags back
to the ravine bottom along the pullback direction.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..derivatives.models import ObjectiveModel
from ..errors import SearchFailureError, ZigzagError
from ..newton.engine import evaluate_state, pullback_q
from .criteria import tau_check_criterion
from .models import AlphaSample, AlphaSection, SectionPhase, ZigzagConfig
from .searches import Criterion, explicit_search, golden_section_search, safe_evaluate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DownResult:
    next: np.ndarray
    identifier: str  # "D", "D-" or "F"
    sections: List[AlphaSection]
    reached_ravine: bool


@dataclass(frozen=True)
class ZigResult:
    escape_point: np.ndarray
    identifier: str  # "^" or "A"
    alpha: float
    section: AlphaSection


@dataclass(frozen=True)
class ZagResult:
    next: np.ndarray
    identifier: str  # "v", "" (stayed at escape point), "U" or "P"
    sections: List[AlphaSection] = field(default_factory=list)


def plain_section(criterion: Criterion, x: np.ndarray, nu: np.ndarray) -> AlphaSection:
    """Section for a full step: the criterion at alpha = 0 and alpha = 1."""
    return AlphaSection(
        phase=SectionPhase.PLAIN,
        samples=[
            AlphaSample(alpha=0.0, criterion=safe_evaluate(criterion, x)),
            AlphaSample(alpha=1.0, criterion=safe_evaluate(criterion, x + nu)),
        ],
        chosen_alpha=1.0,
    )


def coarse_local_minima(samples: List[AlphaSample]) -> List[int]:
    """
    Indices of local minima of a sampled criterion.

    The first sample is never a candidate. Interior samples must lie below
    their left neighbour and not above their right one (so a plateau counts
    once, at its start); the last sample only needs to lie below its left
    neighbour. Failed samples act as +inf neighbours and are never minima.
    """
    values = [math.inf if s.criterion is None else s.criterion for s in samples]
    last = len(values) - 1
    minima = []
    for k in range(1, last + 1):
        if math.isinf(values[k]):
            continue
        if not values[k] < values[k - 1]:
            continue
        if k < last and not values[k] <= values[k + 1]:
            continue
        minima.append(k)
    return minima


def _full_step(criterion: Criterion, x: np.ndarray, nu: np.ndarray, sections) -> DownResult:
    return DownResult(
        next=x + nu,
        identifier="F",
        sections=sections + [plain_section(criterion, x, nu)],
        reached_ravine=False,
    )


def down_phase(
    model: ObjectiveModel,
    x: np.ndarray,
    nu: np.ndarray,
    cfg: ZigzagConfig,
    criterion: Optional[Criterion] = None,
) -> DownResult:
    """
    Descend along nu into the first sufficiently deep tau_check minimum.

    Args:
        model: Objective model
        x: Current point (outside a ravine)
        nu: Newton step at x, nonzero
        cfg: Strategy configuration
        criterion: Point criterion; defaults to tau_check of the model

    Returns:
        DownResult with identifier "D" (a coarse sample is already below the
        entry threshold), "D-" (a refined minimum is) or "F" (full Newton
        step because no minimum reaches the entry threshold)
    """
    criterion = criterion or tau_check_criterion(model)
    try:
        coarse = explicit_search(criterion, x, nu, cfg.explicit_steps, SectionPhase.DOWN_COARSE)
    except SearchFailureError:
        logger.debug("Down phase: coarse search failed everywhere, taking full step")
        return _full_step(criterion, x, nu, [])

    sections = [coarse]
    for k in coarse_local_minima(coarse.samples):
        sample = coarse.samples[k]
        if sample.criterion <= cfg.entry_threshold:
            point = x + sample.alpha * nu
            return DownResult(point, "D", sections, reached_ravine=True)

        base = sample.alpha
        try:
            result = golden_section_search(
                lambda delta: criterion(x + (base + delta) * nu),
                (-cfg.golden_bracket, cfg.golden_bracket),
                cfg.golden_max_steps,
                cfg.golden_tolerance,
            )
        except SearchFailureError:
            logger.debug(f"Down phase: refinement at alpha={base:g} failed")
            continue

        sections.append(
            AlphaSection(
                phase=SectionPhase.DOWN_REFINE,
                samples=[AlphaSample(alpha=base + d, criterion=v) for d, v in result.samples],
                chosen_alpha=base + result.alpha,
                base_alpha=base,
            )
        )
        combined = base + result.alpha
        if abs(result.alpha) > cfg.refine_alpha_limit or combined < 0.0:
            logger.debug(f"Down phase: rejected refinement {base:g} -> {combined:g}")
            continue
        if result.value <= cfg.entry_threshold:
            return DownResult(x + combined * nu, "D-", sections, reached_ravine=True)

    logger.debug(f"Down phase: no minimum below entry threshold, coarse best at {coarse.chosen_alpha:g}")
    return _full_step(criterion, x, nu, sections)


def zig_phase(
    model: ObjectiveModel,
    x: np.ndarray,
    nu: np.ndarray,
    cfg: ZigzagConfig,
    criterion: Optional[Criterion] = None,
) -> ZigResult:
    """
    Follow nu until tau_check leaves the ravine.

    Samples alpha = k / explicit_steps from 0 upwards and stops at the first
    sample above the escape threshold ("^"); without such a sample the full
    step alpha = 1 is taken ("A").
    """
    criterion = criterion or tau_check_criterion(model)
    samples: List[AlphaSample] = []
    steps = cfg.explicit_steps
    for k in range(steps + 1):
        alpha = k / steps
        value = safe_evaluate(criterion, x + alpha * nu)
        samples.append(AlphaSample(alpha=alpha, criterion=value))
        if value is not None and value > cfg.escape_threshold:
            section = AlphaSection(phase=SectionPhase.ZIG, samples=samples, chosen_alpha=alpha)
            return ZigResult(x + alpha * nu, "^", alpha, section)

    section = AlphaSection(phase=SectionPhase.ZIG, samples=samples, chosen_alpha=1.0)
    return ZigResult(x + nu, "A", 1.0, section)


def line_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between the lines spanned by u and v, in [0, pi/2]."""
    cos = abs(float(u @ v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, cos))


def zag_phase(
    model: ObjectiveModel,
    escape_point: np.ndarray,
    zig_nu: np.ndarray,
    cfg: ZigzagConfig,
    parallelity_enabled: bool,
    criterion: Optional[Criterion] = None,
) -> ZagResult:
    """
    Pull back from the escape point to the ravine bottom.

    Returns:
        ZagResult with identifier "U" (no pullback direction; escape point
        kept), "P" (pullback parallel to the zig line; full Newton step from
        the escape point), "v" (successful Golden Section along the
        pullback) or "" (search failed or did not improve; escape point kept)
    """
    try:
        state = evaluate_state(model, escape_point)
        pull = pullback_q(state.bundle)
    except ZigzagError as e:
        logger.warning(f"Zag phase: no pullback direction at escape point ({str(e)})")
        return ZagResult(escape_point, "U")

    if parallelity_enabled and line_angle(zig_nu, pull.dir) < cfg.parallelity_angle:
        logger.debug("Zag phase: pullback parallel to zig direction, full step")
        return ZagResult(escape_point + state.nu, "P")

    criterion = criterion or tau_check_criterion(model)
    direction = pull.dir * float(np.linalg.norm(zig_nu))
    start_value = safe_evaluate(criterion, escape_point)
    try:
        result = golden_section_search(
            lambda delta: criterion(escape_point + delta * direction),
            (-cfg.golden_bracket, cfg.golden_bracket),
            cfg.golden_max_steps,
            cfg.golden_tolerance,
        )
    except SearchFailureError:
        logger.warning("Zag phase: Golden Section failed, staying at escape point")
        return ZagResult(escape_point, "")

    sign = -1.0 if result.alpha < 0 else 1.0
    section = AlphaSection(
        phase=SectionPhase.ZAG,
        samples=[AlphaSample(alpha=sign * d, criterion=v) for d, v in result.samples],
        chosen_alpha=abs(result.alpha),
    )
    if start_value is not None and result.value > start_value:
        return ZagResult(escape_point, "", [section])
    return ZagResult(escape_point + result.alpha * direction, "v", [section])
