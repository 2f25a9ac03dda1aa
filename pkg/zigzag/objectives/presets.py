"""Named presets of the test functions, addressable from the CLI."""
import logging
from typing import Callable, Dict, List, Union

from ..derivatives.models import ObjectiveModel
from ..errors import UnknownPresetError
from .functions import (
    Beale,
    GoldsteinPrice,
    HenonHeiles,
    Himmelblau,
    Junction1,
    Junction2,
    PlanarFunction,
    Quadratic,
    Rosenbrock,
    RosenbrockDitch,
)
from .models import FunctionFamily, FunctionPreset, Landmark

logger = logging.getLogger(__name__)

# Documented start sets. None of the Rosenbrock starts lies on the valley
# bottom y = x^2, where the first Newton step would already be exact.
ROSENBROCK_STARTS = [
    (-1.5, 2.0), (-1.0, 1.5), (-0.5, 0.0), (0.0, 1.0), (0.5, -0.5),
    (1.5, 1.5), (2.0, 3.0), (1.5, 3.0), (-1.0, 0.5), (0.5, 1.0),
]

# Far up the left valley wall. These trajectories reach the ravine far from
# the minimum, where zig steps have to be damped to stay inside it.
ROSENBROCK_VALLEY_STARTS = [(-10.0, 0.0), (-5.0, 0.0), (-3.0, 0.0)]

_PRESETS: List[FunctionPreset] = [
    FunctionPreset(
        name="Quadratic",
        family=FunctionFamily.QUADRATIC,
        params={"c1": 0.0, "c2": 0.0, "C11": 1.0, "C22": 4.0},
        description="1/2 (x - c)^T C (x - c) with C = diag(1, 4)",
        window=(-2.0, 2.0, -2.0, 2.0),
        starts=[(1.5, 1.0), (-1.0, 0.5), (0.3, -1.7), (-1.9, -1.9)],
    ),
    FunctionPreset(
        name="Rosenbrock-narrow",
        family=FunctionFamily.ROSENBROCK,
        params={"a": 1.0, "b": 100.0, "c": 1.0},
        description="minimum, narrow valley",
        window=(-2.0, 2.0, -1.0, 3.0),
        starts=ROSENBROCK_STARTS,
    ),
    FunctionPreset(
        name="Rosenbrock-narrow-saddle",
        family=FunctionFamily.ROSENBROCK,
        params={"a": 1.0, "b": -100.0, "c": 1.0},
        description="saddle, narrow valley",
        window=(-2.0, 2.0, -1.0, 3.0),
        starts=ROSENBROCK_STARTS,
    ),
    FunctionPreset(
        name="Rosenbrock-wide",
        family=FunctionFamily.ROSENBROCK,
        params={"a": 1.0, "b": 10.0, "c": 1.0},
        description="minimum, wide valley",
        window=(-2.0, 2.0, -1.0, 3.0),
        starts=ROSENBROCK_STARTS + ROSENBROCK_VALLEY_STARTS,
    ),
    FunctionPreset(
        name="Rosenbrock-wide-saddle",
        family=FunctionFamily.ROSENBROCK,
        params={"a": 1.0, "b": -10.0, "c": 1.0},
        description="saddle, wide valley",
        window=(-2.0, 2.0, -1.0, 3.0),
        starts=ROSENBROCK_STARTS + [(-1.0, 0.25)],
    ),
    FunctionPreset(
        name="Rosenbrock-ditch-wide",
        family=FunctionFamily.ROSENBROCK_DITCH,
        params={"a": 1.0, "b": 10.0, "c": 1.0, "d": 1.0},
        description="bent ditch",
        window=(-2.0, 2.0, -1.0, 3.0),
        starts=ROSENBROCK_STARTS,
    ),
    FunctionPreset(
        name="Rosenbrock-ditch-wide-straight",
        family=FunctionFamily.ROSENBROCK_DITCH,
        params={"a": 1.0, "b": 10.0, "c": 0.0, "d": 1.0},
        description="straight ditch",
        window=(-2.0, 2.0, -2.0, 2.0),
        starts=[
            (-1.5, 1.0), (-1.0, -1.5), (0.0, 0.5), (0.5, -0.5), (1.5, 1.5),
            (-0.5, 1.8), (1.8, -1.0), (0.2, 1.2), (-1.8, -0.2), (1.2, 0.8),
        ],
    ),
    FunctionPreset(
        name="Himmelblau",
        family=FunctionFamily.HIMMELBLAU,
        description="four minima, one maximum, four saddles",
        window=(-5.0, 5.0, -5.0, 5.0),
        starts=[
            (0.0, 0.0), (1.0, 1.0), (-1.0, 2.0), (2.0, -1.0), (-2.0, -2.0),
            (4.0, 4.0), (-4.0, 4.0), (4.0, -4.0), (-4.0, -4.0), (0.5, -3.0),
        ],
    ),
    FunctionPreset(
        name="Henon-Heiles",
        family=FunctionFamily.HENON_HEILES,
        params={"a": 1.0},
        description="one minimum, three saddles",
        window=(-1.5, 1.5, -1.0, 1.5),
        starts=[
            (0.3, 0.3), (-0.4, 0.6), (0.8, -0.2), (-0.9, -0.7), (0.2, 1.2),
            (1.2, 0.5), (-1.2, 0.2), (0.6, -0.8), (-0.3, -0.3), (0.0, 0.8),
        ],
    ),
    FunctionPreset(
        name="junction1",
        family=FunctionFamily.JUNCTION1,
        description="two bent crossing ditches",
        window=(-6.0, 6.0, -6.0, 6.0),
        starts=[
            (1.5, -2.0), (-3.0, 1.0), (4.0, 4.0), (-4.5, -3.0), (2.0, 5.0),
            (-1.0, -5.0), (5.0, -1.5), (-5.0, 2.5), (0.5, 3.0), (3.0, 0.5),
        ],
    ),
    FunctionPreset(
        name="junction2",
        family=FunctionFamily.JUNCTION2,
        description="one bent and one straight crossing ditch",
        window=(-6.0, 6.0, -6.0, 6.0),
        starts=[
            (1.5, -2.0), (-3.0, 1.0), (4.0, 4.0), (-4.5, -3.0), (2.0, 5.0),
            (-1.0, -5.0), (5.0, -1.5), (-5.0, 2.5), (0.5, 3.0), (3.0, 0.5),
        ],
    ),
    FunctionPreset(
        name="Goldstein-Price",
        family=FunctionFamily.GOLDSTEIN_PRICE,
        description="crossing valleys, minimum g(0, -1) = 3",
        window=(-2.0, 2.0, -3.0, 1.0),
        starts=[
            (0.5, -0.5), (-0.5, -1.5), (0.2, -1.2), (-0.3, -0.6), (0.4, -1.4),
            (1.0, 0.5), (-1.0, -2.0), (0.0, 0.0), (1.5, -1.5), (-1.5, 0.5),
        ],
    ),
    FunctionPreset(
        name="Beale",
        family=FunctionFamily.BEALE,
        description="minimum b(3, 0.5) = 0",
        window=(-1.0, 4.0, -1.5, 1.5),
        starts=[
            (2.0, 0.0), (1.0, 1.0), (3.5, 0.8), (2.5, -0.5), (0.5, 0.5),
            (3.0, 1.2), (1.5, -1.0), (3.8, 0.2), (2.0, 0.6), (0.0, -0.5),
        ],
    ),
]

PRESET_REGISTRY: Dict[str, FunctionPreset] = {p.name: p for p in _PRESETS}

_FACTORIES: Dict[FunctionFamily, Callable[[Dict[str, float]], ObjectiveModel]] = {
    FunctionFamily.QUADRATIC: lambda p: Quadratic(
        (p["c1"], p["c2"]), [[p["C11"], 0.0], [0.0, p["C22"]]]
    ),
    FunctionFamily.ROSENBROCK: lambda p: Rosenbrock(p["a"], p["b"], p["c"]),
    FunctionFamily.ROSENBROCK_DITCH: lambda p: RosenbrockDitch(p["a"], p["b"], p["c"], p["d"]),
    FunctionFamily.HIMMELBLAU: lambda p: Himmelblau(),
    FunctionFamily.HENON_HEILES: lambda p: HenonHeiles(p["a"]),
    FunctionFamily.JUNCTION1: lambda p: Junction1(),
    FunctionFamily.JUNCTION2: lambda p: Junction2(),
    FunctionFamily.GOLDSTEIN_PRICE: lambda p: GoldsteinPrice(),
    FunctionFamily.BEALE: lambda p: Beale(),
}


def presets() -> List[FunctionPreset]:
    """All registered presets, in registration order."""
    return list(_PRESETS)


def get_preset(name: str) -> FunctionPreset:
    try:
        return PRESET_REGISTRY[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown function preset {name!r}; known: {', '.join(PRESET_REGISTRY)}"
        ) from None


def build_model(preset: Union[str, FunctionPreset]) -> ObjectiveModel:
    """Instantiate the model behind a preset (or preset name)."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    model = _FACTORIES[preset.family](preset.params)
    model.name = preset.name
    return model


def landmarks(preset: Union[str, FunctionPreset]) -> List[Landmark]:
    """Known landmarks of a preset's function."""
    model = build_model(preset)
    if isinstance(model, (PlanarFunction, Quadratic)):
        return model.landmarks()
    return []
