"""Objective evaluation contract, exact derivative calculus and FD oracles."""
from .calculus import (
    RotatedModel,
    VectorJet,
    chain_rule,
    linear_combination,
    product_rule,
    quadratic_bundle,
)
from .models import DerivativeBundle, ObjectiveModel, as_point, symmetric_third
from .oracles import (
    fd_divergence,
    fd_gradient,
    fd_hessian,
    fd_jacobian,
    fd_third,
    unique_third_count,
)

__all__ = [
    "DerivativeBundle",
    "ObjectiveModel",
    "RotatedModel",
    "VectorJet",
    "as_point",
    "chain_rule",
    "fd_divergence",
    "fd_gradient",
    "fd_hessian",
    "fd_jacobian",
    "fd_third",
    "linear_combination",
    "product_rule",
    "quadratic_bundle",
    "symmetric_third",
    "unique_third_count",
]
