"""Exact computations with the Schrodinger Lie algebra s_n and its weight modules."""

from .lie import Generator, LieElement, SchrodingerAlgebra, bracket, verify_structure
from .scalars import Scalar, sqrt_of
from .uea import UEA, UEAElement, normal_order, reduce_central
from .weyl import WeylOperator, WeylRealization, phi_injectivity_check

__all__ = [
    "Generator",
    "LieElement",
    "Scalar",
    "SchrodingerAlgebra",
    "UEA",
    "UEAElement",
    "WeylOperator",
    "WeylRealization",
    "bracket",
    "normal_order",
    "phi_injectivity_check",
    "reduce_central",
    "sqrt_of",
    "verify_structure",
]
