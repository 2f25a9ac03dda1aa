"""Two-dimensional test functions, their presets and known landmarks."""
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
    StraightJunction,
    beale,
    goldstein_price,
    henon_heiles,
    himmelblau,
    junction1,
    junction2,
    quadratic,
    rosenbrock,
    rosenbrock_ditch,
)
from .models import FunctionFamily, FunctionPreset, Landmark, LandmarkKind
from .presets import build_model, get_preset, landmarks, presets

__all__ = [
    "Beale",
    "FunctionFamily",
    "FunctionPreset",
    "GoldsteinPrice",
    "HenonHeiles",
    "Himmelblau",
    "Junction1",
    "Junction2",
    "Landmark",
    "LandmarkKind",
    "PlanarFunction",
    "Quadratic",
    "Rosenbrock",
    "RosenbrockDitch",
    "StraightJunction",
    "beale",
    "build_model",
    "get_preset",
    "goldstein_price",
    "henon_heiles",
    "himmelblau",
    "junction1",
    "junction2",
    "landmarks",
    "presets",
    "quadratic",
    "rosenbrock",
    "rosenbrock_ditch",
]
