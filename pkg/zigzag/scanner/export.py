"""Plain-text export of grids and curves for plotting tools."""
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from .models import LAYER_NAMES, CurveField, FieldGrid, ZeroCurve

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
MASK_FILE = "mask.txt"

PathLike = Union[str, Path]


def grid_file(directory: PathLike, layer: str) -> Path:
    return Path(directory) / f"grid_{layer}.txt"


def curves_file(directory: PathLike, curve_field: CurveField) -> Path:
    return Path(directory) / f"curves_{CurveField(curve_field).value}.txt"


def _grid_header(grid: FieldGrid, layer: str) -> str:
    xmin, xmax, ymin, ymax = grid.bounds
    nx, ny = grid.resolution
    return f"layer={layer} bounds={xmin!r},{xmax!r},{ymin!r},{ymax!r} resolution={nx},{ny}"


def _parse_header(line: str):
    fields = dict(item.split("=", 1) for item in line.lstrip("#").split())
    bounds = tuple(float(v) for v in fields["bounds"].split(","))
    nx, ny = (int(v) for v in fields["resolution"].split(","))
    return fields["layer"], bounds, (nx, ny)


def write_grid(grid: FieldGrid, directory: PathLike) -> List[Path]:
    """
    Write one file per layer plus the mask.

    Each file has a one-line header with bounds and resolution, then ny rows
    of nx values; row 0 is the bottom row (smallest y). NaN marks masked
    cells.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, layer in grid.layers.items():
        path = grid_file(directory, name)
        np.savetxt(path, layer, fmt=FLOAT_FORMAT, header=_grid_header(grid, name))
        written.append(path)
    path = directory / MASK_FILE
    np.savetxt(path, grid.mask.astype(int), fmt="%d", header=_grid_header(grid, "mask"))
    written.append(path)
    logger.info(f"Wrote {len(written)} grid files to {directory}")
    return written


def read_grid(directory: PathLike) -> FieldGrid:
    """Read the layers written by write_grid; missing layers are skipped."""
    directory = Path(directory)
    layers = {}
    bounds, resolution = None, None
    for name in LAYER_NAMES:
        path = grid_file(directory, name)
        if not path.exists():
            continue
        with open(path) as f:
            _, bounds, resolution = _parse_header(f.readline())
        layers[name] = np.loadtxt(path, ndmin=2)
    mask_path = directory / MASK_FILE
    with open(mask_path) as f:
        _, bounds, resolution = _parse_header(f.readline())
    mask = np.loadtxt(mask_path, dtype=int, ndmin=2).astype(bool)
    return FieldGrid(bounds=bounds, resolution=resolution, layers=layers, mask=mask)


def write_curves(curves: Sequence[ZeroCurve], path: PathLike) -> Path:
    """
    Write curves as ordered (x, y, singular) rows, one blank line between curves.

    Each curve starts with a comment line naming its field and whether it
    is closed.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        for index, curve in enumerate(curves):
            if index:
                f.write("\n")
            f.write(f"# field={curve.field.value} closed={int(curve.closed)}\n")
            flags = curve.singular or [False] * len(curve)
            for (x, y), singular in zip(curve.points, flags):
                f.write(f"{FLOAT_FORMAT % x} {FLOAT_FORMAT % y} {int(singular)}\n")
    logger.info(f"Wrote {len(curves)} curves to {path}")
    return path


def read_curves(path: PathLike) -> List[ZeroCurve]:
    curves: List[ZeroCurve] = []
    current = None
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line.startswith("#"):
                fields = dict(item.split("=", 1) for item in line.lstrip("#").split())
                current = {
                    "field": CurveField(fields["field"]),
                    "closed": fields["closed"] == "1",
                    "rows": [],
                }
                curves.append(current)
            elif line:
                x, y, singular = line.split()
                current["rows"].append((float(x), float(y), singular == "1"))
    return [
        ZeroCurve(
            field=c["field"],
            points=np.array([(x, y) for x, y, _ in c["rows"]]).reshape(-1, 2),
            closed=c["closed"],
            singular=[s for _, _, s in c["rows"]],
        )
        for c in curves
    ]
