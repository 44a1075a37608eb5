"""Quotient presentation data of a toric stack: [L / G].

G is the diagonalizable subgroup of G_m^n cut out by prod_rho a_rho^<m, n_rho> = 1
for all m, so it is recorded through its character group
Z^n / image(M -> Z^n). L is affine n-space minus the locus where every
irrelevant monomial vanishes.
"""

from dataclasses import dataclass
from math import gcd
from typing import Tuple

import numpy as np

from .exactalg import AbelianInvariants, cokernel_invariants, intmatrix, kernel_basis
from .stackyfan import Cone, StackyFan


@dataclass(frozen=True)
class QuotientPresentation:
    num_vars: int
    pairing: np.ndarray
    character_group: AbelianInvariants
    irrelevant_monomials: Tuple[Cone, ...]
    kernel_R_rank: int

    @property
    def torus_rank(self) -> int:
        return self.character_group.free_rank

    @property
    def finite_part(self) -> Tuple[int, ...]:
        return self.character_group.torsion

    def as_dict(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "pairing": [[int(x) for x in row] for row in self.pairing],
            "torus_rank": self.torus_rank,
            "finite_part": list(self.finite_part),
            "irrelevant_monomials": [list(c) for c in self.irrelevant_monomials],
            "kernel_rank": self.kernel_R_rank,
        }


def kernel_characters(fan: StackyFan) -> np.ndarray:
    """Basis (as columns) of the characters m with <m, v_rho> = 0 for every ray."""
    if not fan.rays:
        return np.ascontiguousarray(intmatrix(np.eye(fan.dim, dtype=int)))
    return kernel_basis(intmatrix([list(r.v) for r in fan.rays]))


def quotient_presentation(fan: StackyFan) -> QuotientPresentation:
    n = fan.num_rays
    pairing = intmatrix([list(r.n) for r in fan.rays], shape=(n, fan.dim)).T
    pairing = np.ascontiguousarray(pairing)
    characters = cokernel_invariants(np.ascontiguousarray(pairing.T), n)
    everything = set(range(n))
    irrelevant = []
    for sigma in fan.max_cones:
        comp = tuple(sorted(everything - set(sigma)))
        if comp not in irrelevant:
            irrelevant.append(comp)
    return QuotientPresentation(
        n,
        pairing,
        characters,
        tuple(irrelevant),
        kernel_characters(fan).shape[1],
    )


def generic_stabilizer_order(fan: StackyFan, ray_index: int) -> int:
    """Order of the generic stabilizer along the divisor of a ray."""
    ray = fan.rays[ray_index]
    g = 0
    for x in ray.n:
        g = gcd(g, x)
    assert g == ray.level, (g, ray.level)
    return g
