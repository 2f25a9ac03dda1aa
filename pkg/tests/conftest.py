import logging

import numpy as np
import pytest

from zigzag.objectives import get_preset


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240611))


@pytest.fixture
def window_points(rng):
    """Uniform random points inside a preset's window."""

    def draw(preset_name, count):
        xmin, xmax, ymin, ymax = get_preset(preset_name).window
        return np.column_stack([rng.uniform(xmin, xmax, count), rng.uniform(ymin, ymax, count)])

    return draw


@pytest.fixture
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in list(root.handlers):
        root.removeHandler(handler)
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
