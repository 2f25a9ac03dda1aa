"""Evaluate Newton-related layers of a planar model on a cell-center grid."""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from shared.worker_pool import WorkerPool

from ..derivatives.models import ObjectiveModel
from ..errors import DimensionMismatchError, SingularHessianError, ZigzagError
from ..newton.engine import det_hessian, evaluate_state
from .models import LAYER_NAMES, Bounds, FieldGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowTask:
    model: ObjectiveModel
    y: float
    xs: Tuple[float, ...]


def _sample_cell(model: ObjectiveModel, point: np.ndarray) -> Tuple[Dict[str, float], bool]:
    """Layer values at one point and whether the cell is masked."""
    cell = dict.fromkeys(LAYER_NAMES, np.nan)
    try:
        state = evaluate_state(model, point)
    except SingularHessianError:
        try:
            bundle = model.evaluate(point)
        except ZigzagError:
            return cell, True
        cell.update(
            value=bundle.value,
            grad_x=bundle.gradient[0],
            grad_y=bundle.gradient[1],
            det_hess=det_hessian(bundle),
        )
        return cell, True
    except ZigzagError:
        return cell, True

    cell.update(
        value=state.value,
        grad_x=state.gamma[0],
        grad_y=state.gamma[1],
        newton_x=state.nu[0],
        newton_y=state.nu[1],
        tau=state.tau,
        tau_check=state.tau_check,
        det_hess=state.det_hess,
    )
    masked = not all(np.isfinite(v) for v in cell.values())
    return cell, masked


def scan_row(task: RowTask) -> Tuple[Dict[str, np.ndarray], np.ndarray]:
    """Sample one grid row; returns (layers, mask) for that row."""
    nx = len(task.xs)
    row = {name: np.full(nx, np.nan) for name in LAYER_NAMES}
    mask = np.zeros(nx, dtype=bool)
    for column, x in enumerate(task.xs):
        cell, masked = _sample_cell(task.model, np.array([x, task.y]))
        for name, v in cell.items():
            row[name][column] = v
        mask[column] = masked
    return row, mask


def scan(
    model: ObjectiveModel,
    bounds: Bounds,
    resolution: Tuple[int, int],
    workers: int = 1,
) -> FieldGrid:
    """
    Sample all layers at the cell centers of a window.

    Cells with a singular Hessian or a failed evaluation are masked, never
    fatal; a fully masked grid is a valid result.

    Args:
        model: Planar objective model
        bounds: (xmin, xmax, ymin, ymax)
        resolution: (nx, ny) number of cells
        workers: Rows are sampled in parallel when > 1

    Returns:
        The sampled FieldGrid
    """
    if model.dimension != 2:
        raise DimensionMismatchError(
            f"scan needs a planar model, {model.name} has dimension {model.dimension}"
        )
    nx, ny = (int(r) for r in resolution)
    grid = FieldGrid(
        bounds=tuple(float(b) for b in bounds),
        resolution=(nx, ny),
        layers={name: np.full((ny, nx), np.nan) for name in LAYER_NAMES},
        mask=np.ones((ny, nx), dtype=bool),
    )

    xs = tuple(float(x) for x in grid.xs)
    tasks = [RowTask(model=model, y=float(y), xs=xs) for y in grid.ys]
    logger.info(f"Scanning {model.name} on {nx}x{ny} cells over {grid.bounds}")

    for result in WorkerPool(workers).map(scan_row, tasks):
        if not result.ok:
            logger.warning(f"Row {result.index} failed, leaving it masked: {result.error}")
            continue
        row, mask = result.value
        for name in LAYER_NAMES:
            grid.layers[name][result.index] = row[name]
        grid.mask[result.index] = mask

    masked = int(grid.mask.sum())
    logger.info(f"Scan finished: {masked} of {nx * ny} cells masked")
    return grid
