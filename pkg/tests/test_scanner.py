import numpy as np
import numpy.testing as npt
import pytest

from zigzag.errors import DimensionMismatchError
from zigzag.objectives import Quadratic, build_model, get_preset, landmarks
from zigzag.scanner import (
    LAYER_NAMES,
    CurveField,
    FieldGrid,
    SingularityType,
    ZeroCurve,
    classify_singularity,
    read_curves,
    read_grid,
    scan,
    uncovered_landmarks,
    write_curves,
    write_grid,
    zero_curves,
)

UNIT_SQUARE = (-1.0, 1.0, -1.0, 1.0)


def _synthetic_grid(newton):
    """det H = y on a 20x20 grid, Newton field given as a function of (x, y)."""
    grid = FieldGrid(
        bounds=UNIT_SQUARE,
        resolution=(20, 20),
        layers={name: np.zeros((20, 20)) for name in ("det_hess", "newton_x", "newton_y")},
        mask=np.zeros((20, 20), dtype=bool),
    )
    X, Y = np.meshgrid(grid.xs, grid.ys)
    grid.layers["det_hess"][:] = Y
    nx, ny = newton(X, Y)
    grid.layers["newton_x"][:] = nx
    grid.layers["newton_y"][:] = ny
    return grid


def _scan_preset(name, resolution, workers=1):
    return scan(build_model(name), get_preset(name).window, resolution, workers)


def test_grid_geometry():
    grid = _synthetic_grid(lambda X, Y: (X, Y))
    assert grid.dx == pytest.approx(0.1)
    assert grid.cell_diagonal == pytest.approx(np.hypot(0.1, 0.1))
    assert grid.xs[0] == pytest.approx(-0.95)
    assert grid.cell_of(0.0, -0.99) == (0, 10)
    assert grid.cell_of(1.5, 0.0) is None
    with pytest.raises(KeyError):
        grid.layer("tau")


def test_grid_shape_checks():
    with pytest.raises(ValueError):
        FieldGrid(UNIT_SQUARE, (1, 5), {}, np.zeros((5, 1), dtype=bool))
    with pytest.raises(ValueError):
        FieldGrid((1.0, 1.0, 0.0, 1.0), (2, 2), {}, np.zeros((2, 2), dtype=bool))
    with pytest.raises(DimensionMismatchError):
        FieldGrid(UNIT_SQUARE, (3, 2), {"tau": np.zeros((3, 2))}, np.zeros((2, 3), dtype=bool))


def test_scan_quadratic_has_flat_criterion():
    grid = _scan_preset("Quadratic", (12, 10))
    assert set(grid.layers) == set(LAYER_NAMES)
    assert grid.layers["tau"].shape == (10, 12)
    assert not grid.mask.any()
    npt.assert_array_equal(grid.layers["tau"], 1.0)
    npt.assert_array_equal(grid.layers["tau_check"], 0.0)
    npt.assert_allclose(grid.layers["det_hess"], 4.0)
    assert zero_curves(grid, CurveField.TAU_MINUS_ONE) == []
    assert zero_curves(grid, CurveField.DET_HESS) == []


def test_scan_requires_planar_model():
    with pytest.raises(DimensionMismatchError):
        scan(Quadratic(np.zeros(3), np.eye(3)), UNIT_SQUARE, (4, 4))
    with pytest.raises(ValueError):
        scan(build_model("Quadratic"), UNIT_SQUARE, (1, 4))


@pytest.mark.slow
@pytest.mark.parametrize("name, b", [("Rosenbrock-wide", 10.0), ("Rosenbrock-narrow", 100.0)])
def test_rosenbrock_singular_curve_is_parabola(name, b):
    grid = _scan_preset(name, (400, 400))
    curves = zero_curves(grid, CurveField.DET_HESS)
    assert curves
    points = np.concatenate([c.points for c in curves])
    assert len(points) > 400
    # det H = 8 b^2 x^2 - 8 b^2 y + 4 b vanishes on y = x^2 + 1 / (2 b)
    x, y = points[:, 0], points[:, 1]
    distance = np.abs(y - x ** 2 - 0.5 / b) / np.sqrt(1.0 + 4.0 * x ** 2)
    assert distance.max() <= grid.cell_diagonal


def test_rosenbrock_tau_curves_flag_singular_crossings():
    grid = _scan_preset("Rosenbrock-wide", (60, 60))
    curves = zero_curves(grid, CurveField.TAU_MINUS_ONE)
    assert curves
    assert any(any(c.singular) for c in curves)
    assert all(len(c.singular) == len(c) for c in curves)


def test_rosenbrock_minimum_lies_on_a_tau_curve():
    grid = _scan_preset("Rosenbrock-wide", (80, 80))
    curves = zero_curves(grid, CurveField.TAU_MINUS_ONE)
    assert uncovered_landmarks(grid, curves, landmarks("Rosenbrock-wide")) == []


@pytest.mark.slow
def test_himmelblau_stationary_points_lie_on_tau_curves():
    grid = _scan_preset("Himmelblau", (100, 100))
    curves = zero_curves(grid, CurveField.TAU_MINUS_ONE)
    assert uncovered_landmarks(grid, curves, landmarks("Himmelblau")) == []


def test_uncovered_landmarks_without_curves():
    grid = _scan_preset("Henon-Heiles", (10, 10))
    marks = landmarks("Henon-Heiles")
    missing = uncovered_landmarks(grid, [], marks)
    # the isolated origin is never reported
    assert [m.location for m in missing] == [m.location for m in marks[1:]]


def test_parallel_scan_matches_sequential():
    sequential = _scan_preset("Himmelblau", (8, 6))
    parallel = _scan_preset("Himmelblau", (8, 6), workers=2)
    npt.assert_array_equal(parallel.mask, sequential.mask)
    for name in LAYER_NAMES:
        npt.assert_array_equal(parallel.layers[name], sequential.layers[name])


def test_countercurrent_singularity():
    grid = _synthetic_grid(lambda X, Y: (np.sign(Y), np.zeros_like(Y)))
    (curve,) = zero_curves(grid, CurveField.DET_HESS)
    assert len(curve) == 20
    assert not curve.closed
    npt.assert_allclose(curve.points[:, 1], 0.0, atol=1e-12)
    assert classify_singularity(grid, curve) is SingularityType.COUNTERCURRENT


def test_inflection_singularity():
    grid = _synthetic_grid(lambda X, Y: (np.zeros_like(Y), -np.sign(Y)))
    (curve,) = zero_curves(grid, CurveField.DET_HESS)
    assert classify_singularity(grid, curve) is SingularityType.INFLECTION


def test_mixed_singularity():
    grid = _synthetic_grid(lambda X, Y: (np.ones_like(Y), np.zeros_like(Y)))
    (curve,) = zero_curves(grid, CurveField.DET_HESS)
    assert classify_singularity(grid, curve) is SingularityType.MIXED


def test_masked_cells_break_curves():
    grid = _synthetic_grid(lambda X, Y: (np.sign(Y), np.zeros_like(Y)))
    grid.mask[:, 10] = True
    curves = zero_curves(grid, CurveField.DET_HESS)
    assert len(curves) == 2
    assert sorted(len(c) for c in curves) == [9, 10]


def test_closed_curve():
    grid = _synthetic_grid(lambda X, Y: (X, Y))
    X, Y = np.meshgrid(grid.xs, grid.ys)
    grid.layers["det_hess"][:] = X ** 2 + Y ** 2 - 0.25
    (curve,) = zero_curves(grid, CurveField.DET_HESS)
    assert curve.closed
    radii = np.hypot(curve.points[:, 0], curve.points[:, 1])
    npt.assert_allclose(radii, 0.5, atol=0.02)


def test_zero_curve_majority_flag():
    points = np.zeros((3, 2))
    assert ZeroCurve(CurveField.TAU_MINUS_ONE, points, singular=[True, True, False]).is_singular
    assert not ZeroCurve(CurveField.TAU_MINUS_ONE, points, singular=[True, False]).is_singular
    assert not ZeroCurve(CurveField.DET_HESS, points).is_singular


def test_grid_export_round_trip(tmp_path):
    grid = _scan_preset("Rosenbrock-wide", (7, 5))
    written = write_grid(grid, tmp_path)
    assert len(written) == len(LAYER_NAMES) + 1
    assert (tmp_path / "grid_tau_check.txt").exists()
    restored = read_grid(tmp_path)
    assert restored.bounds == grid.bounds
    assert restored.resolution == grid.resolution
    npt.assert_array_equal(restored.mask, grid.mask)
    for name in LAYER_NAMES:
        npt.assert_array_equal(restored.layers[name], grid.layers[name])


def test_curve_export_round_trip(tmp_path):
    open_points = np.array([[0.1, 0.2], [0.3, 0.4]])
    loop_points = np.array([[1.0, 1.0], [2.0, 1.0], [1.5, 2.0]])
    curves = [
        ZeroCurve(CurveField.TAU_MINUS_ONE, open_points, False, [False, True]),
        ZeroCurve(CurveField.TAU_MINUS_ONE, loop_points, True),
    ]
    path = write_curves(curves, tmp_path / "curves_tau_minus_one.txt")
    lines = path.read_text().splitlines()
    assert lines[0] == "# field=tau_minus_one closed=0"
    assert lines[1] == "0.10000000000000001 0.20000000000000001 0"
    assert lines[3] == ""
    restored = read_curves(path)
    assert [c.closed for c in restored] == [False, True]
    npt.assert_array_equal(restored[0].points, curves[0].points)
    assert restored[0].singular == [False, True]
    assert restored[1].singular == [False, False, False]
