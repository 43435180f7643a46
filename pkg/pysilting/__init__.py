"""Silting mutation over finite-dimensional algebras."""

from .algebra import Algebra, AlgebraPresentation, build_algebra
from .complexes import ProjComplex, compare_order, minimize
from .const import VERSION
from .errors import SiltingError
from .silting import SiltingRecord, classify, mutate

__all__ = [
    "VERSION",
    "Algebra",
    "AlgebraPresentation",
    "ProjComplex",
    "SiltingError",
    "SiltingRecord",
    "build_algebra",
    "classify",
    "compare_order",
    "minimize",
    "mutate",
]
