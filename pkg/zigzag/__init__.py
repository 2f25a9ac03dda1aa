"""Newton's method with a divergence-based zigzag line search."""

__version__ = "1.0.0"
