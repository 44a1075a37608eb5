"""Exact integer linear algebra: Hermite/Smith forms, kernels, cokernels."""

from ._kernels import NUMBA_AVAILABLE, USE_NUMBA
from .normal_forms import (
    AbelianInvariants,
    SmithForm,
    cokernel_invariants,
    diagonal_invariants,
    hermite_normal_form,
    identity,
    intmatrix,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
)

__all__ = [
    "AbelianInvariants",
    "NUMBA_AVAILABLE",
    "SmithForm",
    "USE_NUMBA",
    "cokernel_invariants",
    "diagonal_invariants",
    "hermite_normal_form",
    "identity",
    "intmatrix",
    "invariant_factors",
    "kernel_basis",
    "rank",
    "smith_normal_form",
]
