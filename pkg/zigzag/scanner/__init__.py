"""Criterion-field scans, zero-crossing curves and singularity types."""
from .contours import classify_singularity, uncovered_landmarks, zero_curves
from .export import read_curves, read_grid, write_curves, write_grid
from .models import LAYER_NAMES, CurveField, FieldGrid, SingularityType, ZeroCurve
from .sampling import scan

__all__ = [
    "LAYER_NAMES",
    "CurveField",
    "FieldGrid",
    "SingularityType",
    "ZeroCurve",
    "classify_singularity",
    "read_curves",
    "read_grid",
    "scan",
    "uncovered_landmarks",
    "write_curves",
    "write_grid",
]
