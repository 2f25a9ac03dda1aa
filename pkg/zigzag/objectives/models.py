"""Domain types for the test-function suite."""
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class LandmarkKind(str, Enum):
    """Kinds of analytically known points of a test function."""
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    SADDLE = "saddle"
    SINGULAR_CURVE_POINT = "singular-curve-point"

    @property
    def is_stationary(self) -> bool:
        return self is not LandmarkKind.SINGULAR_CURVE_POINT


class FunctionFamily(str, Enum):
    """Closed-form families behind the presets."""
    QUADRATIC = "quadratic"
    ROSENBROCK = "rosenbrock"
    ROSENBROCK_DITCH = "rosenbrock_ditch"
    HIMMELBLAU = "himmelblau"
    HENON_HEILES = "henon_heiles"
    JUNCTION1 = "junction1"
    JUNCTION2 = "junction2"
    GOLDSTEIN_PRICE = "goldstein_price"
    BEALE = "beale"


class Landmark(BaseModel):
    """A known point of a test function."""

    location: Tuple[float, ...]
    kind: LandmarkKind
    value: Optional[float] = None
    isolated: bool = False  # stationary point not connected to a tau ravine


class FunctionPreset(BaseModel):
    """A named parameterization of a test-function family."""

    name: str
    family: FunctionFamily
    params: Dict[str, float] = Field(default_factory=dict)
    description: str = ""
    window: Tuple[float, float, float, float]  # xmin, xmax, ymin, ymax
    starts: List[Tuple[float, float]] = Field(default_factory=list)
