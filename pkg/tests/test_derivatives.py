import itertools

import numpy as np
import numpy.testing as npt
import pytest

from zigzag.derivatives import (
    DerivativeBundle,
    RotatedModel,
    VectorJet,
    as_point,
    chain_rule,
    fd_divergence,
    fd_gradient,
    fd_hessian,
    fd_jacobian,
    fd_third,
    product_rule,
    quadratic_bundle,
    symmetric_third,
    unique_third_count,
)
from zigzag.errors import DimensionMismatchError, OracleFailureError, ZigzagError
from zigzag.newton import evaluate_state, newton_step, tau
from zigzag.objectives import Himmelblau, Quadratic, build_model, presets

PRESET_NAMES = [p.name for p in presets()]


def _assert_close_scaled(actual, expected, rtol=1e-4):
    scale = max(1.0, float(np.max(np.abs(expected))))
    npt.assert_allclose(actual, expected, rtol=rtol, atol=rtol * scale)


def test_as_point_checks_dimension_and_finiteness():
    npt.assert_array_equal(as_point([[1, 2]]), [1.0, 2.0])
    with pytest.raises(DimensionMismatchError):
        as_point([1.0, 2.0, 3.0], 2)
    with pytest.raises(ValueError):
        as_point([1.0, np.inf])


def test_symmetric_third_is_exactly_symmetric(rng):
    third = symmetric_third(rng.standard_normal((4, 4, 4)))
    for perm in itertools.permutations(range(3)):
        npt.assert_array_equal(third, third.transpose(perm))


def test_build_copies_canonical_entry():
    third = np.zeros((2, 2, 2))
    third[0, 0, 1] = 5.0
    third[1, 0, 0] = -3.0  # not canonical, overwritten
    bundle = DerivativeBundle.build(0.0, [0.0, 0.0], [[1.0, 2.0], [7.0, 1.0]], third)
    assert bundle.third[1, 0, 0] == 5.0
    assert bundle.third[0, 1, 0] == 5.0
    assert bundle.hessian[1, 0] == 2.0


def test_build_rejects_inconsistent_shapes():
    with pytest.raises(DimensionMismatchError):
        DerivativeBundle.build(0.0, [0.0, 0.0], np.eye(3), np.zeros((2, 2, 2)))


def test_product_rule_cubic():
    x = np.array([2.0, -1.0])
    u = quadratic_bundle(x, 0.0, (1.0, 0.0), np.zeros((2, 2)))  # x0
    v = quadratic_bundle(x, 0.0, (0.0, 0.0), [[2.0, 0.0], [0.0, 0.0]])  # x0^2
    cube = product_rule(u, v)
    assert cube.value == 8.0
    npt.assert_allclose(cube.gradient, [12.0, 0.0])
    npt.assert_allclose(cube.hessian, [[12.0, 0.0], [0.0, 0.0]])
    assert cube.third[0, 0, 0] == 6.0
    assert np.count_nonzero(cube.third) == 1


def test_chain_rule_of_exponential_of_linear_map():
    # F(u) = exp(u), u = 2 x0 - x1: every derivative is exp(u) times coefficient products
    x = np.array([0.3, 0.1])
    a = np.array([2.0, -1.0])
    u = float(a @ x)
    e = np.exp(u)
    outer = DerivativeBundle.build(e, [e], [[e]], [[[e]]])
    result = chain_rule(outer, VectorJet.linear(a.reshape(1, 2), np.array([u])))
    npt.assert_allclose(result.gradient, e * a)
    npt.assert_allclose(result.hessian, e * np.outer(a, a))
    npt.assert_allclose(result.third, e * np.einsum("i,j,k->ijk", a, a, a))


def test_chain_rule_dimension_mismatch():
    outer = DerivativeBundle.build(0.0, [0.0, 0.0], np.zeros((2, 2)), np.zeros((2, 2, 2)))
    with pytest.raises(DimensionMismatchError):
        chain_rule(outer, VectorJet.linear(np.ones((1, 2)), np.zeros(1)))


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_analytic_derivatives_match_finite_differences(name, window_points):
    model = build_model(name)
    for x in window_points(name, 100):
        bundle = model.evaluate(x)
        _assert_close_scaled(fd_gradient(model, x), bundle.gradient)
        _assert_close_scaled(fd_hessian(model, x), bundle.hessian)
        _assert_close_scaled(fd_third(model, x), bundle.third)


def test_value_based_hessian_oracle_is_coarse_but_consistent():
    model = Himmelblau()
    x = np.array([1.0, -2.0])
    npt.assert_allclose(
        fd_hessian(model, x, h=1e-4, from_values=True), model.evaluate(x).hessian, rtol=1e-3
    )


def test_oracle_reports_non_finite_sample():
    class Pole(Quadratic):
        def derivatives(self, x):
            if x[0] > 0.5:
                return np.nan, x, np.eye(2), np.zeros((2, 2, 2))
            return super().derivatives(x)

    model = Pole([0.0, 0.0], np.eye(2))
    with pytest.raises(OracleFailureError):
        fd_gradient(model, [0.5, 0.0], h=1e-3)


def test_unique_third_count():
    assert unique_third_count(1) == 1
    assert unique_third_count(2) == 4
    assert unique_third_count(10) == 220
    with pytest.raises(ValueError):
        unique_third_count(0)


def test_fd_jacobian_of_linear_field():
    A = np.array([[1.0, 2.0], [-3.0, 0.5]])
    npt.assert_allclose(fd_jacobian(lambda p: A @ p, [0.2, 0.7]), A, rtol=1e-8)


@pytest.mark.parametrize("point", [(4.0, 4.0), (-4.0, -4.0), (1.0, -4.0)])
def test_divergence_of_newton_field_is_minus_n_tau(point):
    model = Himmelblau()
    state = evaluate_state(model, point)
    divergence = fd_divergence(lambda p: newton_step(model.evaluate(p)), point)
    npt.assert_allclose(-divergence / 2.0, state.tau, rtol=1e-5, atol=1e-7)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_tau_is_rotation_invariant(name, window_points):
    base = build_model(name)
    angles = np.random.default_rng(7).uniform(0.0, 2.0 * np.pi, 10)
    points = window_points(name, 50)
    compared = 0
    for angle in angles:
        R = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        rotated = RotatedModel(base, R)
        for p in points:
            try:
                expected = evaluate_state(base, p)
            except ZigzagError:
                continue
            if np.linalg.cond(expected.bundle.hessian) > 1e8:
                continue
            # R x = p
            bundle = rotated.evaluate(R.T @ p)
            npt.assert_allclose(bundle.value, expected.bundle.value, rtol=1e-10, atol=1e-12)
            npt.assert_allclose(tau(bundle, newton_step(bundle)), expected.tau, rtol=1e-6, atol=1e-8)
            compared += 1
    assert compared >= 0.8 * len(angles) * len(points)


def test_rotation_shape_is_checked():
    with pytest.raises(DimensionMismatchError):
        RotatedModel(Himmelblau(), np.eye(3))
