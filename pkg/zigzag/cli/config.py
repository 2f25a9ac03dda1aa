"""Experiment configuration files for the command-line front end."""
import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..driver.models import RunLimits
from ..errors import UnknownPresetError
from ..linesearch.models import Strategy, ZigzagConfig
from ..objectives.presets import get_preset

logger = logging.getLogger(__name__)

CONFIG_FORMAT_VERSION = 1


class SamplerSpec(BaseModel):
    """Uniform random start points inside the function's window."""

    model_config = ConfigDict(extra="forbid")

    count: int = Field(default=10, gt=0)
    seed: int = 0

    def draw(self, window: Tuple[float, float, float, float]) -> List[Tuple[float, float]]:
        xmin, xmax, ymin, ymax = window
        rng = np.random.Generator(np.random.PCG64(self.seed))
        xs = rng.uniform(xmin, xmax, self.count)
        ys = rng.uniform(ymin, ymax, self.count)
        return [(float(x), float(y)) for x, y in zip(xs, ys)]


class EigenSpec(BaseModel):
    """Size and seeding of the eigenpair experiment."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(default=10, ge=2)
    seed: int = 0
    runs: int = Field(default=10, gt=0)


class ExperimentConfig(BaseModel):
    """
    One experiment, as read from a JSON config file.

    Start points come from `starts` when given, else from `sampler`, else
    from the preset's documented start set.
    """

    model_config = ConfigDict(extra="forbid")

    format_version: int = CONFIG_FORMAT_VERSION
    function: Optional[str] = None
    strategy: Strategy = Strategy.SZZP
    starts: Optional[List[Tuple[float, ...]]] = None
    sampler: Optional[SamplerSpec] = None
    zigzag: ZigzagConfig = Field(default_factory=ZigzagConfig)
    limits: RunLimits = Field(default_factory=RunLimits)
    window: Optional[Tuple[float, float, float, float]] = None
    resolution: Tuple[int, int] = (400, 400)
    eigen: EigenSpec = Field(default_factory=EigenSpec)
    output_dir: Optional[Path] = None
    workers: Optional[int] = Field(default=None, gt=0)

    @field_validator("format_version")
    @classmethod
    def check_format_version(cls, v: int) -> int:
        if v != CONFIG_FORMAT_VERSION:
            raise ValueError(
                f"unsupported config format_version {v}, expected {CONFIG_FORMAT_VERSION}"
            )
        return v

    @field_validator("function")
    @classmethod
    def check_function(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            try:
                get_preset(v)
            except UnknownPresetError as e:
                raise ValueError(e.args[0]) from e
        return v

    @field_validator("resolution")
    @classmethod
    def check_resolution(cls, v: Tuple[int, int]) -> Tuple[int, int]:
        if min(v) < 2:
            raise ValueError(f"resolution must be at least 2x2, got {v}")
        return v


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate an experiment config file."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    logger.info(f"Loaded experiment config from {path}")
    return ExperimentConfig(**data)
