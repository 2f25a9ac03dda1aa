"""
Closed-form test functions with exact derivatives through third order.

Each function is written as an outer function of a few intermediate
variables composed with an inner polynomial map, and differentiated with
the exact chain and product rules from zigzag.derivatives.calculus.
"""
import logging
import math
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..derivatives.calculus import (
    VectorJet,
    bundle_to_raw,
    chain_rule,
    linear_combination,
    product_rule,
    quadratic_bundle,
)
from ..derivatives.models import DerivativeBundle, ObjectiveModel, RawDerivatives, as_point
from ..errors import DimensionMismatchError
from .models import Landmark, LandmarkKind

logger = logging.getLogger(__name__)

_ZERO2 = np.zeros((2, 2))


def _sum_of_squares(u: np.ndarray) -> DerivativeBundle:
    """Outer function F(u) = sum u_a^2 evaluated at u."""
    m = u.size
    return DerivativeBundle.build(u @ u, 2.0 * u, 2.0 * np.eye(m), np.zeros((m, m, m)))


def _stationary_kind(hessian: np.ndarray) -> LandmarkKind:
    eigenvalues = np.linalg.eigvalsh(hessian)
    if np.all(eigenvalues > 0):
        return LandmarkKind.MINIMUM
    if np.all(eigenvalues < 0):
        return LandmarkKind.MAXIMUM
    return LandmarkKind.SADDLE


def polish_stationary_point(model: ObjectiveModel, seed: Sequence[float], iterations: int = 50):
    """
    Refine an approximate stationary point by plain Newton iterations.

    Args:
        model: Model with analytic gradient and Hessian
        seed: Starting coordinates (a few digits are enough)
        iterations: Iteration cap

    Returns:
        The refined point as a float array
    """
    x = as_point(seed, model.dimension)
    for _ in range(iterations):
        bundle = model.evaluate(x)
        if np.linalg.norm(bundle.gradient) <= 1e-13:
            break
        x = x - np.linalg.solve(bundle.hessian, bundle.gradient)
    return x


class PlanarFunction(ObjectiveModel):
    """Base class for the two-dimensional test functions."""

    def __init__(self):
        super().__init__(2)

    def landmarks(self) -> List[Landmark]:
        """Known stationary points (and singular-curve points) of this function."""
        return []

    def _landmark(
        self, location, kind: Optional[LandmarkKind] = None, isolated: bool = False
    ) -> Landmark:
        point = as_point(location, 2)
        if kind is None:
            kind = _stationary_kind(self.evaluate(point).hessian)
        return Landmark(
            location=tuple(float(c) for c in point),
            kind=kind,
            value=self.value(point),
            isolated=isolated,
        )


class Quadratic(ObjectiveModel):
    """f(x) = 1/2 (x - c)^T C (x - c) in any dimension."""

    def __init__(self, center, shape):
        center = as_point(center)
        shape = np.asarray(shape, dtype=float)
        if shape.shape != (center.size, center.size):
            raise DimensionMismatchError(
                f"shape matrix must be {center.size}x{center.size}, got {shape.shape}"
            )
        super().__init__(center.size)
        self.center = center
        self.shape = 0.5 * (shape + shape.T)
        self.name = "Quadratic"

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        s = x - self.center
        n = self.dimension
        return 0.5 * s @ self.shape @ s, self.shape @ s, self.shape, np.zeros((n, n, n))

    def landmarks(self) -> List[Landmark]:
        return [
            Landmark(
                location=tuple(float(c) for c in self.center),
                kind=_stationary_kind(self.shape),
                value=0.0,
            )
        ]


class Rosenbrock(PlanarFunction):
    """g(x, y) = (x - a)^2 + b (y - c x^2)^2; b < 0 turns the minimum into a saddle."""

    def __init__(self, a: float = 1.0, b: float = 100.0, c: float = 1.0):
        super().__init__()
        self.a, self.b, self.c = float(a), float(b), float(c)
        self.name = "Rosenbrock"

    @property
    def params(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c}

    def _valley(self, q: float) -> Tuple[float, float, float, float]:
        """Profile across the valley and its first three derivatives."""
        return q * q, 2.0 * q, 2.0, 0.0

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        p_jet = quadratic_bundle(x, -self.a, (1.0, 0.0), _ZERO2)
        q_jet = quadratic_bundle(x, 0.0, (0.0, 1.0), [[-2.0 * self.c, 0.0], [0.0, 0.0]])
        p, q = p_jet.value, q_jet.value

        phi, dphi, d2phi, d3phi = self._valley(q)
        third = np.zeros((2, 2, 2))
        third[1, 1, 1] = self.b * d3phi
        outer = DerivativeBundle.build(
            p * p + self.b * phi,
            (2.0 * p, self.b * dphi),
            np.diag([2.0, self.b * d2phi]),
            third,
        )
        return bundle_to_raw(chain_rule(outer, VectorJet.from_bundles([p_jet, q_jet])))

    def det_hessian_closed_form(self, x: float, y: float) -> float:
        """Determinant of the Hessian: 8 b^2 c^2 x^2 - 8 b^2 c y + 4 b."""
        b, c = self.b, self.c
        return 8.0 * b * b * c * c * x * x - 8.0 * b * b * c * y + 4.0 * b

    def landmarks(self) -> List[Landmark]:
        marks = [self._landmark((self.a, self.c * self.a ** 2))]
        if self.b * self.c != 0.0:
            marks.append(
                self._landmark(
                    (0.0, 1.0 / (2.0 * self.b * self.c)), LandmarkKind.SINGULAR_CURVE_POINT
                )
            )
        return marks


class RosenbrockDitch(Rosenbrock):
    """Rosenbrock variant whose valley profile b q^2 / (1 + d q^2) levels off."""

    def __init__(self, a: float = 1.0, b: float = 10.0, c: float = 1.0, d: float = 1.0):
        if d < 0:
            raise ValueError(f"ditch parameter d must be nonnegative, got {d}")
        super().__init__(a, b, c)
        self.d = float(d)
        self.name = "Rosenbrock-ditch"

    @property
    def params(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def _valley(self, q: float) -> Tuple[float, float, float, float]:
        d = self.d
        dq2 = d * q * q
        s = 1.0 + dq2
        return (
            q * q / s,
            2.0 * q / s ** 2,
            (2.0 - 6.0 * dq2) / s ** 3,
            24.0 * d * q * (dq2 - 1.0) / s ** 4,
        )

    def landmarks(self) -> List[Landmark]:
        # The det H closed form of the plain valley does not carry over.
        return [self._landmark((self.a, self.c * self.a ** 2))]


# Approximate stationary points, refined by polish_stationary_point.
HIMMELBLAU_SEEDS = (
    (3.0, 2.0),
    (-2.805118, 3.131312),
    (-3.779310, -3.283186),
    (3.584428, -1.848127),
    (-0.270845, -0.923039),
    (0.086677, 2.884254),
    (-3.073026, -0.081353),
    (3.385154, 0.073852),
    (-0.127961, -1.953715),
)


class Himmelblau(PlanarFunction):
    """f(x, y) = (x^2 + y - 11)^2 + (x + y^2 - 7)^2."""

    name = "Himmelblau"

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        A = quadratic_bundle(x, -11.0, (0.0, 1.0), [[2.0, 0.0], [0.0, 0.0]])
        B = quadratic_bundle(x, -7.0, (1.0, 0.0), [[0.0, 0.0], [0.0, 2.0]])
        inner = VectorJet.from_bundles([A, B])
        return bundle_to_raw(chain_rule(_sum_of_squares(inner.value), inner))

    def landmarks(self) -> List[Landmark]:
        return list(_himmelblau_landmarks())


@lru_cache(maxsize=1)
def _himmelblau_landmarks() -> Tuple[Landmark, ...]:
    model = Himmelblau()
    marks = tuple(
        model._landmark(polish_stationary_point(model, seed)) for seed in HIMMELBLAU_SEEDS
    )
    logger.debug(f"Polished {len(marks)} Himmelblau stationary points")
    return marks


class HenonHeiles(PlanarFunction):
    """f(x, y) = 1/2 (x^2 + y^2) + a (x^2 y - y^3 / 3)."""

    def __init__(self, a: float = 1.0):
        super().__init__()
        if a == 0:
            raise ValueError("Henon-Heiles parameter a must be nonzero")
        self.a = float(a)
        self.name = "Henon-Heiles"

    @property
    def params(self) -> Dict[str, float]:
        return {"a": self.a}

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        a = self.a
        px, py = x
        value = 0.5 * (px * px + py * py) + a * (px * px * py - py ** 3 / 3.0)
        gradient = (px + 2.0 * a * px * py, py + a * (px * px - py * py))
        hessian = [[1.0 + 2.0 * a * py, 2.0 * a * px], [2.0 * a * px, 1.0 - 2.0 * a * py]]
        third = np.zeros((2, 2, 2))
        third[0, 0, 1] = 2.0 * a
        third[1, 1, 1] = -2.0 * a
        return value, np.array(gradient), np.array(hessian), third

    def landmarks(self) -> List[Landmark]:
        a = self.a
        return [
            self._landmark((0.0, 0.0), isolated=True),
            self._landmark((0.0, 1.0 / a)),
            self._landmark((math.sqrt(3.0) / (2.0 * a), -1.0 / (2.0 * a))),
            self._landmark((-math.sqrt(3.0) / (2.0 * a), -1.0 / (2.0 * a))),
        ]


def _saturation(s: float, k: float) -> Tuple[float, float, float, float]:
    """R(s) = s^2 / (k + s^2) and its first three derivatives."""
    w = k + s * s
    return (
        s * s / w,
        2.0 * k * s / w ** 2,
        2.0 * k * (k - 3.0 * s * s) / w ** 3,
        -24.0 * k * s * (k - s * s) / w ** 4,
    )


class _Junction(PlanarFunction):
    """
    Two crossing ditches on a quadratic bowl.

    j(p, q) = 1000 R_10(p) R_5(q) + p^2 + q^2 with p = x - x_bend y^2 and
    q = y - y_bend p^2.
    """

    x_bend = 0.0
    y_bend = 0.0

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        p_jet = quadratic_bundle(x, 0.0, (1.0, 0.0), [[0.0, 0.0], [0.0, -2.0 * self.x_bend]])
        y_jet = quadratic_bundle(x, 0.0, (0.0, 1.0), _ZERO2)
        q_jet = linear_combination([1.0, -self.y_bend], [y_jet, product_rule(p_jet, p_jet)])
        p, q = p_jet.value, q_jet.value

        P, dP, d2P, d3P = _saturation(p, 10.0)
        Q, dQ, d2Q, d3Q = _saturation(q, 5.0)
        third = np.zeros((2, 2, 2))
        third[0, 0, 0] = 1000.0 * d3P * Q
        third[0, 0, 1] = 1000.0 * d2P * dQ
        third[0, 1, 1] = 1000.0 * dP * d2Q
        third[1, 1, 1] = 1000.0 * P * d3Q
        outer = DerivativeBundle.build(
            1000.0 * P * Q + p * p + q * q,
            (1000.0 * dP * Q + 2.0 * p, 1000.0 * P * dQ + 2.0 * q),
            [
                [1000.0 * d2P * Q + 2.0, 1000.0 * dP * dQ],
                [1000.0 * dP * dQ, 1000.0 * P * d2Q + 2.0],
            ],
            third,
        )
        return bundle_to_raw(chain_rule(outer, VectorJet.from_bundles([p_jet, q_jet])))

    def landmarks(self) -> List[Landmark]:
        return [self._landmark((0.0, 0.0), isolated=True)]


class StraightJunction(_Junction):
    """Both ditches straight, along the coordinate axes."""
    name = "junction-straight"


class Junction2(_Junction):
    """One bent ditch, one straight ditch."""
    name = "junction2"
    y_bend = 0.05


class Junction1(_Junction):
    """Both ditches bent."""
    name = "junction1"
    x_bend = 0.02
    y_bend = 0.05


class GoldsteinPrice(PlanarFunction):
    """[1 + s^2 P(x, y)] [30 + t^2 Q(x, y)] with s = x + y + 1 and t = 2x - 3y."""

    name = "Goldstein-Price"

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        s2 = quadratic_bundle(x, 1.0, (2.0, 2.0), [[2.0, 2.0], [2.0, 2.0]])
        P = quadratic_bundle(x, 19.0, (-14.0, -14.0), [[6.0, 6.0], [6.0, 6.0]])
        t2 = quadratic_bundle(x, 0.0, (0.0, 0.0), [[8.0, -12.0], [-12.0, 18.0]])
        Q = quadratic_bundle(x, 18.0, (-32.0, 48.0), [[24.0, -36.0], [-36.0, 54.0]])
        first = product_rule(s2, P)
        second = product_rule(t2, Q)
        first = DerivativeBundle.build(
            1.0 + first.value, first.gradient, first.hessian, first.third
        )
        second = DerivativeBundle.build(
            30.0 + second.value, second.gradient, second.hessian, second.third
        )
        return bundle_to_raw(product_rule(first, second))

    def landmarks(self) -> List[Landmark]:
        return [self._landmark((0.0, -1.0))]


BEALE_CONSTANTS = (1.5, 2.25, 2.625)


class Beale(PlanarFunction):
    """b(x, y) = sum_k (c_k - x + x y^k)^2 for k = 1, 2, 3."""

    name = "Beale"

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        px, py = x
        residuals = []
        for k, c in enumerate(BEALE_CONSTANTS, start=1):
            yk = py ** k
            yk1 = k * py ** (k - 1)
            yk2 = k * (k - 1) * py ** max(k - 2, 0)
            yk3 = k * (k - 1) * (k - 2) * py ** max(k - 3, 0)
            third = np.zeros((2, 2, 2))
            third[0, 1, 1] = yk2
            third[1, 1, 1] = px * yk3
            residuals.append(
                DerivativeBundle.build(
                    c - px + px * yk,
                    (yk - 1.0, px * yk1),
                    [[0.0, yk1], [yk1, px * yk2]],
                    third,
                )
            )
        inner = VectorJet.from_bundles(residuals)
        return bundle_to_raw(chain_rule(_sum_of_squares(inner.value), inner))

    def landmarks(self) -> List[Landmark]:
        return [self._landmark((3.0, 0.5))]


def quadratic(center, shape) -> Quadratic:
    return Quadratic(center, shape)


def rosenbrock(a: float, b: float, c: float) -> Rosenbrock:
    return Rosenbrock(a, b, c)


def rosenbrock_ditch(a: float, b: float, c: float, d: float) -> RosenbrockDitch:
    return RosenbrockDitch(a, b, c, d)


def himmelblau() -> Himmelblau:
    return Himmelblau()


def henon_heiles(a: float = 1.0) -> HenonHeiles:
    return HenonHeiles(a)


def junction1() -> Junction1:
    return Junction1()


def junction2() -> Junction2:
    return Junction2()


def goldstein_price() -> GoldsteinPrice:
    return GoldsteinPrice()


def beale() -> Beale:
    return Beale()
