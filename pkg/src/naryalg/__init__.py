"""Exact-arithmetic workbench for finite-dimensional n-ary algebras."""

from .errors import NaryError
from .identities import PASS, Passed, Witness, run_check
from .linalg import Matrix, Subspace
from .product import LinearMap, NAryProduct, Symmetry, bracket, make_product, make_skew_product

__all__ = [
    "LinearMap",
    "Matrix",
    "NAryProduct",
    "NaryError",
    "PASS",
    "Passed",
    "Subspace",
    "Symmetry",
    "Witness",
    "bracket",
    "make_product",
    "make_skew_product",
    "run_check",
]

__version__ = "0.1.0"
