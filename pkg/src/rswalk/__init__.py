"""Rudin-Shapiro polynomials, lacunary SU(2) walks and halving operators."""
from ._accel import BACKEND, NUMBA_AVAILABLE
from .errors import (
    InvalidArgumentError,
    NumericalFailureError,
    ResourceLimitError,
    RSWalkError,
    VariantMismatchError,
)
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NUMBA_AVAILABLE",
    "InvalidArgumentError",
    "LaurentPoly",
    "NumericalFailureError",
    "RSWalkError",
    "ResourceLimitError",
    "VariantMismatchError",
    "__version__",
]
