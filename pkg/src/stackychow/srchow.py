"""Stanley-Reisner presentation of the integral Chow ring of a toric stack.

The ring is Z[D_0, ..., D_{n-1}] modulo the linear forms sum_rho <m, n_rho> D_rho
(m over a basis of the dual lattice) and the squarefree monomials of non-faces.
Each degree is handled as a finite presentation: the free module on
face-supported monomials modulo the linear forms times degree k-1 monomials.
"""

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .exactalg import (
    AbelianInvariants,
    SmithForm,
    cokernel_invariants,
    intmatrix,
    smith_normal_form,
)
from .stackyfan import (
    Cone,
    FanError,
    HypothesisError,
    StackyFan,
    minimal_nonfaces,
    multiplicity,
    spanning_pairs,
)

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class RingPresentation:
    num_vars: int
    linear_forms: np.ndarray
    nonface_generators: Tuple[Cone, ...]

    def as_dict(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "linear_forms": [[int(x) for x in row] for row in self.linear_forms],
            "minimal_nonfaces": [list(c) for c in self.nonface_generators],
        }


def presentation(fan: StackyFan) -> RingPresentation:
    if not fan.rays_span():
        raise HypothesisError(
            "the rays of the fan do not span N ⊗ R; the Stanley-Reisner ring is "
            "only identified with the Chow ring when they do"
        )
    forms = intmatrix([list(r.n) for r in fan.rays], shape=(fan.num_rays, fan.dim)).T
    return RingPresentation(
        fan.num_rays, np.ascontiguousarray(forms), tuple(minimal_nonfaces(fan))
    )


def support(m: Monomial) -> Cone:
    return tuple(i for i, e in enumerate(m) if e > 0)


def degree(m: Monomial) -> int:
    return sum(m)


def face_supported_monomials(fan: StackyFan, k: int) -> List[Monomial]:
    """Degree-k monomials whose support is a cone, in lexicographic order."""
    n = fan.num_rays
    if k == 0:
        return [(0,) * n]
    out = []
    for cone in fan.cones:
        s = len(cone)
        if s == 0 or s > k:
            continue
        # compositions of k into s positive parts
        for cuts in combinations(range(1, k), s - 1):
            parts = [b - a for a, b in zip((0,) + cuts, cuts + (k,))]
            m = [0] * n
            for i, e in zip(cone, parts):
                m[i] = e
            out.append(tuple(m))
    return sorted(out)


def all_monomials(n: int, k: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(n), k):
        m = [0] * n
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return sorted(out)


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: Tuple[Monomial, ...]
    relation_matrix: np.ndarray
    invariants: AbelianInvariants

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    @cached_property
    def smith(self) -> SmithForm:
        return smith_normal_form(self.relation_matrix)

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "basis": [list(m) for m in self.basis],
            **self.invariants.as_dict(),
        }


def _is_face_supported(fan: StackyFan, m: Monomial) -> bool:
    return support(m) in fan.cones


def graded_piece(pres: RingPresentation, fan: StackyFan, k: int) -> GradedPiece:
    """The degree-k piece of the ring as a finitely presented abelian group.

    Products landing on a non-face-supported monomial vanish modulo the
    monomial ideal, and so does every product L*m with m not face-supported;
    only face-supported multipliers are therefore needed.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    basis = face_supported_monomials(fan, k)
    index = {m: i for i, m in enumerate(basis)}
    columns = []
    if k > 0:
        forms = pres.linear_forms
        for m in face_supported_monomials(fan, k - 1):
            for row in forms:
                col = [0] * len(basis)
                for rho, c in enumerate(row):
                    if c == 0:
                        continue
                    prod_m = m[:rho] + (m[rho] + 1,) + m[rho + 1 :]
                    j = index.get(prod_m)
                    if j is not None:
                        col[j] += int(c)
                columns.append(col)
    rel = intmatrix(columns, shape=(len(columns), len(basis))).T
    rel = np.ascontiguousarray(rel)
    return GradedPiece(k, tuple(basis), rel, cokernel_invariants(rel, len(basis)))


def graded_piece_oracle(pres: RingPresentation, fan: StackyFan, k: int) -> AbelianInvariants:
    """Brute-force degree-k piece: all monomials, all generators of I + J."""
    n = pres.num_vars
    monos = all_monomials(n, k)
    index = {m: i for i, m in enumerate(monos)}
    columns = set()
    if k > 0:
        for m in all_monomials(n, k - 1):
            for row in pres.linear_forms:
                col = [0] * len(monos)
                for rho, c in enumerate(row):
                    if c:
                        bumped = list(m)
                        bumped[rho] += 1
                        col[index[tuple(bumped)]] += int(c)
                if any(col):
                    columns.add(tuple(col))
    for gen in pres.nonface_generators:
        if len(gen) > k:
            continue
        for m in all_monomials(n, k - len(gen)):
            prod_m = list(m)
            for i in gen:
                prod_m[i] += 1
            col = [0] * len(monos)
            col[index[tuple(prod_m)]] = 1
            columns.add(tuple(col))
    columns = sorted(columns)
    rel = intmatrix(columns, shape=(len(columns), len(monos))).T
    return cokernel_invariants(np.ascontiguousarray(rel), len(monos))


@dataclass(frozen=True)
class ChowClass:
    degree: int
    coords: Tuple[int, ...]

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if other.degree != self.degree:
            raise ValueError("cannot add classes of different degrees")
        return ChowClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, scalar: int) -> "ChowClass":
        return ChowClass(self.degree, tuple(scalar * a for a in self.coords))


class ChowRing:
    """Degreewise cache of graded pieces for one fan."""

    def __init__(self, fan: StackyFan):
        self.fan = fan
        self.presentation = presentation(fan)
        self._pieces: Dict[int, GradedPiece] = {}
        self._lock = threading.Lock()

    def piece(self, k: int) -> GradedPiece:
        got = self._pieces.get(k)
        if got is not None:
            return got
        computed = graded_piece(self.presentation, self.fan, k)
        with self._lock:
            return self._pieces.setdefault(k, computed)

    def __getitem__(self, k: int) -> GradedPiece:
        return self.piece(k)

    def pieces(self, max_degree: int) -> List[GradedPiece]:
        return [self.piece(k) for k in range(max_degree + 1)]

    def monomial_class(self, m: Sequence[int]) -> ChowClass:
        m = tuple(int(e) for e in m)
        return class_of_monomial(self.piece(degree(m)), m)


def class_of_monomial(piece: GradedPiece, m: Monomial) -> ChowClass:
    m = tuple(m)
    if degree(m) != piece.degree:
        raise ValueError(f"monomial of degree {degree(m)} given for degree {piece.degree}")
    coords = [0] * len(piece.basis)
    j = piece.index.get(m)
    if j is not None:
        coords[j] = 1
    return ChowClass(piece.degree, tuple(coords))


def multiply(c1: ChowClass, c2: ChowClass, pieces) -> ChowClass:
    """Product of two classes; ``pieces`` maps degree -> GradedPiece."""
    p1, p2 = pieces[c1.degree], pieces[c2.degree]
    target = pieces[c1.degree + c2.degree]
    out = [0] * len(target.basis)
    for a, m1 in zip(c1.coords, p1.basis):
        if a == 0:
            continue
        for b, m2 in zip(c2.coords, p2.basis):
            if b == 0:
                continue
            j = target.index.get(tuple(x + y for x, y in zip(m1, m2)))
            if j is not None:
                out[j] += a * b
    return ChowClass(target.degree, tuple(out))


def normal_form(c: ChowClass, piece: GradedPiece) -> Tuple[int, ...]:
    """Canonical coordinates of a class in the Smith basis of its degree."""
    if c.degree != piece.degree:
        raise ValueError("class and piece have different degrees")
    snf = piece.smith
    y = snf.u.dot(np.array(c.coords, dtype=object)) if c.coords else np.zeros(0, dtype=object)
    out = []
    for i, x in enumerate(y):
        d = snf.d[i] if i < len(snf.d) else 0
        if d == 1:
            out.append(0)
        elif d > 1:
            out.append(int(x) % d)
        else:
            out.append(int(x))
    return tuple(out)


def cycle_class(fan: StackyFan, pieces, sigma) -> ChowClass:
    """Class of the torus-invariant cycle of a cone: the product of its rays."""
    sigma = tuple(sorted(sigma))
    if sigma not in fan.cones:
        raise FanError("not a cone", f"{list(sigma)} is not a cone of the fan")
    m = tuple(1 if i in sigma else 0 for i in range(fan.num_rays))
    return class_of_monomial(pieces[len(sigma)], m)


def coarse_intersection_table(fan: StackyFan) -> List[Tuple[Cone, Cone, Cone, Fraction]]:
    """mult(sigma) mult(tau) / mult(gamma) for each spanning pair of nonzero cones."""
    if not fan.is_canonical:
        raise HypothesisError(
            "coarse intersection coefficients are only defined here for the canonical net "
            "(all levels 1)"
        )
    if not fan.rays_span():
        raise HypothesisError("the rays of the fan do not span N ⊗ R")
    mult = {}

    def m(c):
        if c not in mult:
            mult[c] = multiplicity(fan, c).mult
        return mult[c]

    return [
        (s, t, g, Fraction(m(s) * m(t), m(g)))
        for s, t, g in spanning_pairs(fan)
        if s and t
    ]
