"""
Zero-crossing curves of sampled fields and singularity classification.

Curves come from marching squares over the cell-center lattice: each
square between four neighbouring centers contributes line segments whose
end points sit on the square's edges, linearly interpolated between the
corner values. Segments sharing an edge are chained into polylines.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..linesearch.models import ZigzagConfig
from ..objectives.models import Landmark
from .models import CurveField, FieldGrid, SingularityType, ZeroCurve

logger = logging.getLogger(__name__)

# corners: 0 = (row, col), 1 = (row, col + 1), 2 = (row + 1, col + 1), 3 = (row + 1, col)
# edges are named by their corner pairs; index bits are corners 0..3 being positive
SQUARE_TABLE: Dict[int, Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]] = {
    0b0000: (),
    0b0001: (((0, 1), (0, 3)),),
    0b0010: (((0, 1), (1, 2)),),
    0b0011: (((0, 3), (1, 2)),),
    0b0100: (((1, 2), (2, 3)),),
    0b0110: (((0, 1), (2, 3)),),
    0b0111: (((0, 3), (2, 3)),),
    0b1000: (((0, 3), (2, 3)),),
    0b1001: (((0, 1), (2, 3)),),
    0b1011: (((1, 2), (2, 3)),),
    0b1100: (((0, 3), (1, 2)),),
    0b1101: (((0, 1), (1, 2)),),
    0b1110: (((0, 1), (0, 3)),),
    0b1111: (),
}

# ambiguous squares, keyed by (index, center positive)
SADDLE_TABLE = {
    (0b0101, True): (((0, 1), (1, 2)), ((0, 3), (2, 3))),
    (0b0101, False): (((0, 1), (0, 3)), ((1, 2), (2, 3))),
    (0b1010, True): (((0, 1), (0, 3)), ((1, 2), (2, 3))),
    (0b1010, False): (((0, 1), (1, 2)), ((0, 3), (2, 3))),
}

CORNER_OFFSETS = ((0, 0), (0, 1), (1, 1), (1, 0))

COUNTERCURRENT_COS = 0.9
INFLECTION_COS = 0.5
MIN_SIDE_PAIRS = 3

EdgeKey = Tuple[Tuple[int, int], Tuple[int, int]]


def _square_index(values: Sequence[float]) -> int:
    return sum(1 << i for i, v in enumerate(values) if v > 0)


def _interpolate(p0: np.ndarray, p1: np.ndarray, v0: float, v1: float) -> Tuple[np.ndarray, float]:
    t = v0 / (v0 - v1)
    t = min(max(t, 0.0), 1.0)
    return p0 * (1.0 - t) + t * p1, t


def _square_segments(
    values: Sequence[float],
) -> Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]:
    index = _square_index(values)
    if index in SQUARE_TABLE:
        return SQUARE_TABLE[index]
    return SADDLE_TABLE[(index, float(np.mean(values)) > 0)]


def zero_curves(
    grid: FieldGrid,
    curve_field: CurveField,
    entry_threshold: Optional[float] = None,
) -> List[ZeroCurve]:
    """
    Extract the zero-crossing polylines of a field.

    Squares touching a masked or non-finite cell are skipped, so curves end
    at masked regions. A field that is identically zero has no sign change
    and yields no curves. For tau - 1, points where the interpolated
    tau_check exceeds entry_threshold are flagged singular.

    Args:
        grid: Sampled grid
        curve_field: Field to contour
        entry_threshold: Singularity tag threshold (default of ZigzagConfig)

    Returns:
        Open curves first, then closed ones
    """
    curve_field = CurveField(curve_field)
    if entry_threshold is None:
        entry_threshold = ZigzagConfig().entry_threshold
    values = grid.field_values(curve_field)
    tau_check = grid.layers.get("tau_check")
    valid = ~grid.mask & np.isfinite(values)
    xs, ys = grid.xs, grid.ys
    ny, nx = values.shape

    crossings: Dict[EdgeKey, Tuple[np.ndarray, bool]] = {}
    segments: List[Tuple[EdgeKey, EdgeKey]] = []

    for row in range(ny - 1):
        for col in range(nx - 1):
            cells = [(row + dr, col + dc) for dr, dc in CORNER_OFFSETS]
            if not all(valid[c] for c in cells):
                continue
            corner_values = [float(values[c]) for c in cells]
            pairs = _square_segments(corner_values)
            if not pairs:
                continue
            keys = []
            for pair in pairs:
                for a, b in pair:
                    key = tuple(sorted((cells[a], cells[b])))
                    if key not in crossings:
                        p0 = np.array([xs[cells[a][1]], ys[cells[a][0]]])
                        p1 = np.array([xs[cells[b][1]], ys[cells[b][0]]])
                        point, t = _interpolate(p0, p1, corner_values[a], corner_values[b])
                        singular = False
                        if curve_field is CurveField.TAU_MINUS_ONE and tau_check is not None:
                            check = (1.0 - t) * tau_check[cells[a]] + t * tau_check[cells[b]]
                            singular = bool(check > entry_threshold)
                        crossings[key] = (point, singular)
                    keys.append(key)
            for i in range(0, len(keys), 2):
                segments.append((keys[i], keys[i + 1]))

    curves = [
        _to_curve(curve_field, chain, closed, crossings)
        for chain, closed in _chain(segments)
    ]
    logger.debug(f"{curve_field.value}: {len(segments)} segments chained into {len(curves)} curves")
    return curves


def _chain(segments: List[Tuple[EdgeKey, EdgeKey]]) -> List[Tuple[List[EdgeKey], bool]]:
    adjacency: Dict[EdgeKey, List[int]] = defaultdict(list)
    for index, (a, b) in enumerate(segments):
        adjacency[a].append(index)
        adjacency[b].append(index)
    used = [False] * len(segments)

    def trace(start: EdgeKey) -> List[EdgeKey]:
        keys = [start]
        key = start
        while True:
            index = next((s for s in adjacency[key] if not used[s]), None)
            if index is None:
                return keys
            used[index] = True
            a, b = segments[index]
            key = b if a == key else a
            keys.append(key)

    chains = []
    for key, members in adjacency.items():
        if len(members) == 1 and not used[members[0]]:
            chains.append((trace(key), False))
    for index, (a, _) in enumerate(segments):
        if not used[index]:
            keys = trace(a)
            chains.append((keys[:-1], True))
    return chains


def _to_curve(
    curve_field: CurveField,
    chain: List[EdgeKey],
    closed: bool,
    crossings: Dict[EdgeKey, Tuple[np.ndarray, bool]],
) -> ZeroCurve:
    points = np.array([crossings[key][0] for key in chain])
    singular = [crossings[key][1] for key in chain]
    return ZeroCurve(field=curve_field, points=points, closed=closed, singular=singular)


def _tangents(points: np.ndarray, closed: bool) -> np.ndarray:
    if closed:
        return np.roll(points, -1, axis=0) - np.roll(points, 1, axis=0)
    return np.gradient(points, axis=0)


def _newton_at(grid: FieldGrid, point: np.ndarray) -> Optional[np.ndarray]:
    cell = grid.cell_of(point[0], point[1])
    if cell is None or grid.mask[cell]:
        return None
    nu = np.array([grid.layers["newton_x"][cell], grid.layers["newton_y"][cell]])
    if not np.all(np.isfinite(nu)) or not np.any(nu):
        return None
    return nu


def classify_singularity(grid: FieldGrid, curve: ZeroCurve) -> SingularityType:
    """
    Classify a det H = 0 curve by the Newton vectors beside it.

    At every curve point the nearest-cell Newton vectors are read two cells
    away on each side along the curve normal. Countercurrent: both sides
    run along the curve (mean |cos| to the tangent above 0.9) in opposite
    directions. Inflection: both sides cross the curve (mean |cos| below
    0.5) pointing towards or away from each other. Anything else, or fewer
    than three usable point pairs, is mixed.
    """
    if len(curve) < 2:
        return SingularityType.MIXED
    offset = 2.0 * max(grid.dx, grid.dy)
    cos_plus, cos_minus, opposing = [], [], []

    for point, tangent in zip(curve.points, _tangents(curve.points, curve.closed)):
        length = float(np.linalg.norm(tangent))
        if length == 0.0:
            continue
        t = tangent / length
        normal = np.array([-t[1], t[0]])
        plus = _newton_at(grid, point + offset * normal)
        minus = _newton_at(grid, point - offset * normal)
        if plus is None or minus is None:
            continue
        cos_plus.append(abs(plus @ t) / np.linalg.norm(plus))
        cos_minus.append(abs(minus @ t) / np.linalg.norm(minus))
        opposing.append(float(plus @ minus) < 0.0)

    if len(opposing) < MIN_SIDE_PAIRS:
        return SingularityType.MIXED
    mean_plus, mean_minus = float(np.mean(cos_plus)), float(np.mean(cos_minus))
    if np.mean(opposing) <= 0.5:
        return SingularityType.MIXED
    if mean_plus > COUNTERCURRENT_COS and mean_minus > COUNTERCURRENT_COS:
        return SingularityType.COUNTERCURRENT
    if mean_plus < INFLECTION_COS and mean_minus < INFLECTION_COS:
        return SingularityType.INFLECTION
    return SingularityType.MIXED


def _distance_to_polyline(point: np.ndarray, curve: ZeroCurve) -> float:
    points = curve.points
    if len(points) == 1:
        return float(np.linalg.norm(point - points[0]))
    starts = points[:-1]
    ends = points[1:]
    if curve.closed:
        starts = points
        ends = np.roll(points, -1, axis=0)
    seg = ends - starts
    lengths = np.einsum("ij,ij->i", seg, seg)
    t = np.einsum("ij,ij->i", point - starts, seg) / np.where(lengths > 0, lengths, 1.0)
    t = np.clip(t, 0.0, 1.0)
    nearest = starts + t[:, None] * seg
    return float(np.min(np.linalg.norm(nearest - point, axis=1)))


def uncovered_landmarks(
    grid: FieldGrid, curves: Sequence[ZeroCurve], landmarks: Sequence[Landmark]
) -> List[Landmark]:
    """
    Stationary landmarks farther than one cell diagonal from every curve.

    Landmarks flagged isolated and those outside the window are ignored.
    """
    missing = []
    for landmark in landmarks:
        if not landmark.kind.is_stationary or landmark.isolated:
            continue
        point = np.asarray(landmark.location, dtype=float)
        if grid.cell_of(point[0], point[1]) is None:
            continue
        distance = min((_distance_to_polyline(point, c) for c in curves), default=np.inf)
        if distance > grid.cell_diagonal:
            missing.append(landmark)
    return missing
