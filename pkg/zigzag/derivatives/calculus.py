"""
Third-order calculus on derivative bundles.

The closed-form test functions are assembled from small hand-differentiated
pieces: an outer function of a few intermediate variables and an inner map
from x to those variables. chain_rule and product_rule combine such pieces
exactly, with no numerical differentiation involved.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatchError
from .models import DerivativeBundle, ObjectiveModel, RawDerivatives


@dataclass(frozen=True)
class VectorJet:
    """
    Derivatives of a vector map u: R^n -> R^m.

    Shapes: value (m,), jacobian (m, n), second (m, n, n), third (m, n, n, n).
    """

    value: np.ndarray
    jacobian: np.ndarray
    second: np.ndarray
    third: np.ndarray

    @classmethod
    def from_bundles(cls, components: Sequence[DerivativeBundle]) -> "VectorJet":
        """Stack scalar bundles (one per output component)."""
        return cls(
            value=np.array([c.value for c in components]),
            jacobian=np.stack([c.gradient for c in components]),
            second=np.stack([c.hessian for c in components]),
            third=np.stack([c.third for c in components]),
        )

    @classmethod
    def linear(cls, matrix: np.ndarray, offset: np.ndarray) -> "VectorJet":
        """Jet of the affine map x -> A x + b, given A and A x + b."""
        m, n = matrix.shape
        return cls(
            value=np.asarray(offset, dtype=float),
            jacobian=np.asarray(matrix, dtype=float),
            second=np.zeros((m, n, n)),
            third=np.zeros((m, n, n, n)),
        )


def chain_rule(outer: DerivativeBundle, inner: VectorJet) -> DerivativeBundle:
    """
    Derivatives of F(u(x)) through third order.

    Args:
        outer: Derivatives of F with respect to u, evaluated at u(x)
        inner: Jet of u at x

    Returns:
        Bundle with respect to x
    """
    g, H, T = outer.gradient, outer.hessian, outer.third
    J, K, L = inner.jacobian, inner.second, inner.third
    if J.shape[0] != g.size:
        raise DimensionMismatchError(
            f"outer function takes {g.size} variables, inner map gives {J.shape[0]}"
        )

    gradient = g @ J
    hessian = np.einsum("ab,ai,bj->ij", H, J, J) + np.einsum("a,aij->ij", g, K)
    # d/dx_k of the Hessian: one term from T, three from H (K meets J), one from L.
    HK = np.einsum("ab,aij->bij", H, K)
    third = (
        np.einsum("abc,ai,bj,ck->ijk", T, J, J, J)
        + np.einsum("bik,bj->ijk", HK, J)
        + np.einsum("bjk,bi->ijk", HK, J)
        + np.einsum("bij,bk->ijk", HK, J)
        + np.einsum("a,aijk->ijk", g, L)
    )
    return DerivativeBundle.build(outer.value, gradient, hessian, third)


def product_rule(u: DerivativeBundle, v: DerivativeBundle) -> DerivativeBundle:
    """Leibniz rule for u(x) v(x) through third order."""
    gu, gv = u.gradient, v.gradient
    Hu, Hv = u.hessian, v.hessian

    gradient = gu * v.value + u.value * gv
    hessian = Hu * v.value + np.outer(gu, gv) + np.outer(gv, gu) + u.value * Hv

    def mixed(H, g):
        # H_ij g_k + H_ik g_j + H_jk g_i
        return (
            np.einsum("ij,k->ijk", H, g)
            + np.einsum("ik,j->ijk", H, g)
            + np.einsum("jk,i->ijk", H, g)
        )

    third = u.third * v.value + mixed(Hu, gv) + mixed(Hv, gu) + u.value * v.third
    return DerivativeBundle.build(u.value * v.value, gradient, hessian, third)


def linear_combination(
    coefficients: Sequence[float], bundles: Sequence[DerivativeBundle]
) -> DerivativeBundle:
    """Bundle of sum_k c_k f_k(x)."""
    if len(coefficients) != len(bundles) or not bundles:
        raise DimensionMismatchError("need one coefficient per bundle")
    value = sum(c * b.value for c, b in zip(coefficients, bundles))
    gradient = sum(c * b.gradient for c, b in zip(coefficients, bundles))
    hessian = sum(c * b.hessian for c, b in zip(coefficients, bundles))
    third = sum(c * b.third for c, b in zip(coefficients, bundles))
    return DerivativeBundle.build(value, gradient, hessian, third)


def quadratic_bundle(x: np.ndarray, constant: float, linear, hessian) -> DerivativeBundle:
    """Bundle of c + b.x + 1/2 x^T A x."""
    A = np.asarray(hessian, dtype=float)
    b = np.asarray(linear, dtype=float)
    n = x.size
    value = constant + b @ x + 0.5 * x @ A @ x
    return DerivativeBundle.build(value, b + A @ x, A, np.zeros((n, n, n)))


def bundle_to_raw(bundle: DerivativeBundle) -> RawDerivatives:
    return bundle.value, bundle.gradient, bundle.hessian, bundle.third


class RotatedModel(ObjectiveModel):
    """f_R(x) = f(R x) for an orthogonal (or any square) matrix R."""

    def __init__(self, model: ObjectiveModel, rotation: np.ndarray):
        rotation = np.asarray(rotation, dtype=float)
        if rotation.shape != (model.dimension, model.dimension):
            raise DimensionMismatchError(
                f"rotation must be {model.dimension}x{model.dimension}, got {rotation.shape}"
            )
        super().__init__(model.dimension)
        self.model = model
        self.rotation = rotation
        self.name = f"{model.name}-rotated"

    @property
    def params(self):
        return self.model.params

    def derivatives(self, x: np.ndarray) -> RawDerivatives:
        R = self.rotation
        inner = R @ x
        outer = self.model.evaluate(inner)
        return bundle_to_raw(chain_rule(outer, VectorJet.linear(R, inner)))
