"""Dispatch of one Newton step to the configured line-search strategy."""
import logging
from typing import Optional

import numpy as np

from ..derivatives.models import ObjectiveModel
from ..errors import SearchFailureError
from ..newton.engine import evaluate_state
from ..newton.models import NewtonState
from .criteria import tau_check_criterion, value_criterion
from .models import SectionPhase, StepOutcome, Strategy, ZigzagConfig
from .searches import explicit_search
from .zigzag import down_phase, plain_section, zag_phase, zig_phase

logger = logging.getLogger(__name__)


def strategy_step(
    strategy: Strategy,
    model: ObjectiveModel,
    x,
    cfg: ZigzagConfig,
    state: Optional[NewtonState] = None,
) -> StepOutcome:
    """
    Perform one line-search step from x.

    The result depends only on (strategy, model, x, cfg).

    Args:
        strategy: One of the four strategy names
        model: Objective model
        x: Current point
        cfg: Strategy configuration
        state: Newton state at x, if the caller already has it

    Returns:
        Next point, step identifier and the alpha sections logged on the way

    Raises:
        SingularHessianError: Hessian singular at x
        NonFiniteValueError: model not finite at x
    """
    strategy = Strategy(strategy)
    if state is None:
        state = evaluate_state(model, x)
    x, nu = state.x, state.nu

    if strategy is Strategy.SNO_MNO:
        section = plain_section(value_criterion(model), x, nu)
        return StepOutcome(next=x + nu, identifier="N", sections=[section])

    if strategy is Strategy.SNO_MEX:
        criterion = value_criterion(model)
        try:
            section = explicit_search(criterion, x, nu, cfg.explicit_steps, SectionPhase.EXPLICIT)
        except SearchFailureError:
            logger.warning("Value search failed everywhere, taking full step")
            sections = [plain_section(criterion, x, nu)]
            return StepOutcome(next=x + nu, identifier="N", sections=sections)
        return StepOutcome(
            next=x + section.chosen_alpha * nu, identifier="N", sections=[section]
        )

    criterion = tau_check_criterion(model)
    if state.tau_check > cfg.entry_threshold:
        down = down_phase(model, x, nu, cfg, criterion)
        logger.debug(f"Step {down.identifier} from {x}")
        return StepOutcome(next=down.next, identifier=down.identifier, sections=down.sections)

    zig = zig_phase(model, x, nu, cfg, criterion)
    zag = zag_phase(model, zig.escape_point, nu, cfg, cfg.parallelity_for(strategy), criterion)
    if zag.identifier in ("U", "P"):
        identifier = zag.identifier
    else:
        identifier = zig.identifier + zag.identifier
    logger.debug(f"Step {identifier} from {x}")
    return StepOutcome(
        next=np.asarray(zag.next, dtype=float),
        identifier=identifier,
        sections=[zig.section] + zag.sections,
    )
