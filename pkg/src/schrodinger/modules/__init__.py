"""Weight modules of s_n at finite truncation."""

from .classify import classify, classify_module
from .constructions import (dense_module, tensor_module, verify_verma_factorization, verma,
                            verma_tensor_side, zero_charge_module)
from .sl2 import Sl2Module, sl2_dense, sl2_simple, sl2_verma
from .so import SoModule, so_module
from .weight import (WeightModule, first_singular_offset, nilpotency_probe, simple_quotient,
                     singular_vectors, twist_by_tau, twist_module)

__all__ = [
    "Sl2Module",
    "SoModule",
    "WeightModule",
    "classify",
    "classify_module",
    "dense_module",
    "first_singular_offset",
    "nilpotency_probe",
    "simple_quotient",
    "singular_vectors",
    "sl2_dense",
    "sl2_simple",
    "sl2_verma",
    "so_module",
    "tensor_module",
    "twist_by_tau",
    "twist_module",
    "verify_verma_factorization",
    "verma",
    "verma_tensor_side",
    "zero_charge_module",
]
