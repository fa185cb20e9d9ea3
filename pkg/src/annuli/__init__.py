"""Exact certification of Laurent-parametrized plane annuli."""

from .curves import ParametricCurve
from .laurent import LaurentPoly
from .scalars import Scalar

__all__ = ["ParametricCurve", "LaurentPoly", "Scalar"]
__version__ = "0.1.0"
