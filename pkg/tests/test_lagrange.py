import json

import numpy as np
import numpy.testing as npt
import pytest

from shared.record_sink import serialize_record
from shared.records import deserialize_record
from zigzag.derivatives import fd_gradient, fd_hessian, fd_third
from zigzag.driver import Outcome, classify, run
from zigzag.errors import DimensionMismatchError
from zigzag.lagrange import (
    ConstrainedProblem,
    EigenModel,
    EigenRunRecord,
    UnitSphereConstraint,
    build_eigen_problem,
    eigen_constrained_problem,
    eigen_model,
    eigen_run_record,
    indefiniteness_check,
    lagrangian_model,
    nearest_eigenvalue,
    sample_start,
    sample_starts,
)
from zigzag.linesearch import Strategy
from zigzag.objectives import Quadratic


@pytest.fixture
def problem():
    return build_eigen_problem(4, seed=11)


def test_spectrum_doubles(problem):
    npt.assert_array_equal(problem.spectrum, [1.0, 2.0, 4.0, 8.0])
    npt.assert_allclose(np.linalg.eigvalsh(problem.C), problem.spectrum, rtol=1e-8)
    npt.assert_allclose(problem.Q.T @ problem.Q, np.eye(4), atol=1e-12)
    npt.assert_array_equal(problem.C, problem.C.T)


def test_largest_problem_spectrum():
    problem = build_eigen_problem(10, seed=0)
    eigenvalues = np.linalg.eigvalsh(problem.C)
    assert eigenvalues.max() == pytest.approx(512.0, rel=1e-8)
    npt.assert_allclose(eigenvalues, 2.0 ** np.arange(10), rtol=1e-8)


def test_eigen_problem_is_deterministic():
    a, b = build_eigen_problem(5, seed=7), build_eigen_problem(5, seed=7)
    npt.assert_array_equal(a.C, b.C)
    assert not np.array_equal(a.C, build_eigen_problem(5, seed=8).C)


@pytest.mark.parametrize("n", [0, 1])
def test_eigen_problem_needs_two_dimensions(n):
    with pytest.raises(ValueError):
        build_eigen_problem(n, seed=0)
    with pytest.raises(DimensionMismatchError):
        build_eigen_problem(n, seed=0)


def test_closed_form_matches_general_lagrangian(problem, rng):
    closed = eigen_model(problem)
    general = lagrangian_model(eigen_constrained_problem(problem))
    assert closed.dimension == general.dimension == 5
    for _ in range(5):
        z = rng.uniform(-1.0, 1.0, 5)
        a, b = closed.evaluate(z), general.evaluate(z)
        npt.assert_allclose(b.value, a.value, rtol=1e-12)
        npt.assert_allclose(b.gradient, a.gradient, rtol=1e-12, atol=1e-14)
        npt.assert_allclose(b.hessian, a.hessian, rtol=1e-12, atol=1e-14)
        npt.assert_array_equal(b.third, a.third)


def test_eigen_model_matches_finite_differences(problem, rng):
    model = eigen_model(problem)
    z = np.append(rng.uniform(-1.0, 1.0, 4), 3.0)
    bundle = model.evaluate(z)
    npt.assert_allclose(fd_gradient(model, z), bundle.gradient, rtol=1e-5, atol=1e-6)
    npt.assert_allclose(fd_hessian(model, z), bundle.hessian, rtol=1e-5, atol=1e-6)
    npt.assert_allclose(fd_third(model, z), bundle.third, atol=1e-5)


def test_third_stack_sparsity(problem):
    third = eigen_model(problem).evaluate(np.ones(5)).third
    assert np.count_nonzero(third) == 3 * 4
    assert np.all(third[third != 0] == -1.0)


def test_stationary_points_are_eigenpairs():
    C = np.diag([1.0, 2.0, 4.0])
    model = EigenModel(C)
    for k in range(3):
        w = np.zeros(3)
        w[k] = 1.0
        bundle = model.evaluate(np.append(w, C[k, k]))
        npt.assert_allclose(bundle.gradient, np.zeros(4), atol=1e-15)
        assert classify(bundle.hessian).outcome is Outcome.SADDLE


def test_eigen_model_requires_square_matrix():
    with pytest.raises(DimensionMismatchError):
        EigenModel(np.ones((2, 3)))


def test_start_sampling_ranges(problem):
    starts = sample_starts(problem, seed=5, count=20)
    assert len(starts) == 20
    for z in starts:
        assert z.shape == (5,)
        assert np.all(np.abs(z[:4]) <= 1.0)
        assert 0.0 <= z[4] <= 100.0
    again = sample_starts(problem, seed=5, count=20)
    for a, b in zip(starts, again):
        npt.assert_array_equal(a, b)
    npt.assert_array_equal(sample_start(problem, 1), sample_start(problem, 1))


def test_nearest_eigenvalue(problem):
    assert nearest_eigenvalue(problem, 3.1) == 4.0
    assert nearest_eigenvalue(problem, 0.2) == 1.0


def test_indefiniteness_of_bordered_hessian():
    C = np.diag([1.0, 2.0, 4.0])
    model = EigenModel(C)
    bundle = model.evaluate(np.array([0.0, 0.0, 1.0, 4.0]))
    assert indefiniteness_check(bundle.hessian, 1, [1.0]) is True


def test_indefiniteness_check_inputs():
    H = np.array([[2.0, 1.0], [1.0, 0.0]])
    assert indefiniteness_check(H, 1, [3.0]) is True
    assert indefiniteness_check(np.zeros((2, 2)), 1, [1.0]) is None
    assert indefiniteness_check(np.array([[2.0, 1.0], [1.0, 1.0]]), 1, [1.0]) is False
    with pytest.raises(ValueError):
        indefiniteness_check(H, 0, [])
    with pytest.raises(ValueError):
        indefiniteness_check(H, 1, [0.0])
    with pytest.raises(DimensionMismatchError):
        indefiniteness_check(H, 1, [1.0, 1.0])


def test_constrained_problem_shape_checks():
    objective = Quadratic(np.zeros(2), np.eye(2))
    sphere = UnitSphereConstraint(2)
    problem = ConstrainedProblem(objective=objective, constraints=[sphere])
    assert (problem.n, problem.m) == (2, 1)
    with pytest.raises(DimensionMismatchError):
        ConstrainedProblem(objective=objective, constraints=[sphere, sphere, sphere])
    with pytest.raises(DimensionMismatchError):
        ConstrainedProblem(objective=objective, constraints=[])
    with pytest.raises(DimensionMismatchError):
        ConstrainedProblem(objective=objective, constraints=[UnitSphereConstraint(3)])


def test_general_lagrangian_third_blocks():
    objective = Quadratic(np.zeros(2), np.diag([1.0, 3.0]))
    model = lagrangian_model(ConstrainedProblem(objective, [UnitSphereConstraint(2)]))
    third = model.evaluate([0.2, 0.4, 1.5]).third
    npt.assert_array_equal(third[:2, :2, 2], -np.eye(2))
    npt.assert_array_equal(third[2, :2, :2], -np.eye(2))
    assert third[2, 2, 2] == 0.0


def test_eigen_run_record_round_trip(problem):
    model = eigen_model(problem)
    start = sample_start(problem, 3)
    trajectory = run(model, start, Strategy.SZZP, run_id="Eigen-4:Szzp-Mlm-Ctau:0")
    record = eigen_run_record(problem, trajectory, model)
    assert record.n == 4 and record.seed == 11
    assert record.steps_taken == trajectory.steps_taken
    assert len(record.criterion_series) == len(trajectory.iterates)
    assert record.converged == trajectory.converged
    if not record.converged:
        assert record.final_lambda is None
    restored = deserialize_record(json.loads(serialize_record(record)))
    assert isinstance(restored, EigenRunRecord)
    assert restored == record


@pytest.mark.slow
def test_zigzag_finds_eigenpairs_from_every_start():
    problem = build_eigen_problem(10, seed=0)
    model = eigen_model(problem)
    starts = sample_starts(problem, seed=0, count=10)
    for index, start in enumerate(starts):
        trajectory = run(model, start, Strategy.SZZP, run_id=f"{model.name}:{Strategy.SZZP.value}:{index}")
        record = eigen_run_record(problem, trajectory, model)
        assert record.converged, trajectory.diagnostic
        assert record.outcome is Outcome.SADDLE
        assert record.lambda_relative_error <= 1e-6
        assert abs(record.w_norm - 1.0) <= 1e-6


def test_bordered_hessians_are_indefinite_at_random_points(rng):
    problem = build_eigen_problem(10, seed=0)
    model = eigen_model(problem)
    for _ in range(100):
        z = rng.uniform(-1.0, 1.0, model.dimension)
        hessian = model.evaluate(z).hessian
        assert indefiniteness_check(hessian, 1, [rng.uniform(0.5, 2.0)]) is True


def test_general_bordered_hessians_are_indefinite_at_random_points(rng):
    objective = Quadratic(np.zeros(2), np.diag([1.0, 3.0]))
    model = lagrangian_model(ConstrainedProblem(objective, [UnitSphereConstraint(2)]))
    for _ in range(100):
        z = rng.uniform(-2.0, 2.0, 3)
        assert indefiniteness_check(model.evaluate(z).hessian, 1, [1.0]) is True
