"""Exact classical and Krall orthogonal polynomials, their measures and limits."""

from .arith import AffineMap, Poly, binomial_general, compose_affine, rising_factorial, stirling2
from .classical import dual_hahn, hahn, jacobi, laguerre, meixner
from .krall_families import (
    INFINITY,
    krall_hahn_I,
    krall_hahn_II,
    krall_jacobi_I,
    krall_jacobi_II,
    krall_laguerre,
    krall_meixner_I,
    krall_meixner_II,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "INFINITY",
    "Poly",
    "binomial_general",
    "compose_affine",
    "dual_hahn",
    "hahn",
    "jacobi",
    "krall_hahn_I",
    "krall_hahn_II",
    "krall_jacobi_I",
    "krall_jacobi_II",
    "krall_laguerre",
    "krall_meixner_I",
    "krall_meixner_II",
    "laguerre",
    "meixner",
    "rising_factorial",
    "stirling2",
]
