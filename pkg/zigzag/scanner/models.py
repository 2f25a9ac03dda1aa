"""Domain types for criterion-field scans of planar models."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

from ..errors import DimensionMismatchError

LAYER_NAMES = (
    "value",
    "grad_x",
    "grad_y",
    "newton_x",
    "newton_y",
    "tau",
    "tau_check",
    "det_hess",
)

Bounds = Tuple[float, float, float, float]  # xmin, xmax, ymin, ymax


class CurveField(str, Enum):
    """Fields whose zero crossings are extracted."""
    TAU_MINUS_ONE = "tau_minus_one"
    DET_HESS = "det_hess"


class SingularityType(str, Enum):
    """How Newton vectors behave on both sides of a det H = 0 curve."""
    COUNTERCURRENT = "countercurrent"
    INFLECTION = "inflection"
    MIXED = "mixed"


@dataclass
class FieldGrid:
    """
    Layers sampled at cell centers of a rectangular window.

    Arrays are indexed [row, column] = [y, x] with shape (ny, nx). Masked
    cells had a singular Hessian or failed to evaluate; their Newton and
    tau layers are NaN.
    """

    bounds: Bounds
    resolution: Tuple[int, int]  # nx, ny
    layers: Dict[str, np.ndarray]
    mask: np.ndarray

    def __post_init__(self):
        nx, ny = self.resolution
        if nx < 2 or ny < 2:
            raise ValueError(f"resolution must be at least 2x2, got {nx}x{ny}")
        xmin, xmax, ymin, ymax = self.bounds
        if not (xmin < xmax and ymin < ymax):
            raise ValueError(f"empty window {self.bounds}")
        for name, layer in self.layers.items():
            if layer.shape != (ny, nx):
                raise DimensionMismatchError(
                    f"layer {name} has shape {layer.shape}, expected {(ny, nx)}"
                )
        if self.mask.shape != (ny, nx):
            raise DimensionMismatchError(f"mask has shape {self.mask.shape}, expected {(ny, nx)}")

    @property
    def dx(self) -> float:
        xmin, xmax, _, _ = self.bounds
        return (xmax - xmin) / self.resolution[0]

    @property
    def dy(self) -> float:
        _, _, ymin, ymax = self.bounds
        return (ymax - ymin) / self.resolution[1]

    @property
    def cell_diagonal(self) -> float:
        return float(np.hypot(self.dx, self.dy))

    @property
    def xs(self) -> np.ndarray:
        """Cell-center x coordinates."""
        return self.bounds[0] + (np.arange(self.resolution[0]) + 0.5) * self.dx

    @property
    def ys(self) -> np.ndarray:
        """Cell-center y coordinates."""
        return self.bounds[2] + (np.arange(self.resolution[1]) + 0.5) * self.dy

    def layer(self, name: str) -> np.ndarray:
        if name not in self.layers:
            raise KeyError(f"grid has no layer {name!r}; available: {sorted(self.layers)}")
        return self.layers[name]

    def field_values(self, curve_field: CurveField) -> np.ndarray:
        if CurveField(curve_field) is CurveField.TAU_MINUS_ONE:
            return self.layer("tau") - 1.0
        return self.layer("det_hess")

    def cell_of(self, x: float, y: float):
        """Index (row, column) of the cell containing (x, y), or None outside."""
        xmin, _, ymin, _ = self.bounds
        column = int(np.floor((x - xmin) / self.dx))
        row = int(np.floor((y - ymin) / self.dy))
        nx, ny = self.resolution
        if 0 <= column < nx and 0 <= row < ny:
            return row, column
        return None


@dataclass
class ZeroCurve:
    """
    A polyline along which a field changes sign.

    singular flags the points where the interpolated tau_check exceeds the
    entry threshold, i.e. crossings of tau - 1 through a Hessian
    singularity rather than through a ravine.
    """

    field: CurveField
    points: np.ndarray  # (k, 2)
    closed: bool = False
    singular: List[bool] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def is_singular(self) -> bool:
        """True when most points of the curve are singularity crossings."""
        return bool(self.singular) and sum(self.singular) * 2 > len(self.singular)
