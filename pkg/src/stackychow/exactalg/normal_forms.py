"""Hermite and Smith normal forms over the integers.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so nothing
here can overflow. Only :func:`cokernel_invariants` (which needs no transforms)
goes through the fixed-width kernels in ``_kernels``.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence, Tuple

import numpy as np

from . import _kernels


def intmatrix(entries, shape=None) -> np.ndarray:
    """Build an exact integer matrix (object dtype) from nested sequences."""
    a = np.array(entries, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        if a.size == 0 and shape is None:
            return np.zeros((0, 0), dtype=object)
        raise ValueError(f"expected a 2-dimensional matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x)
    return out


def _exact(a) -> np.ndarray:
    if isinstance(a, np.ndarray) and a.dtype == object and a.ndim == 2:
        return a
    return intmatrix(a)


def _exact_copy(a) -> np.ndarray:
    a = _exact(a)
    return a.copy()


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/ts with t1 | t2 | ... | ts, all ti > 1."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(t <= 1 for t in self.torsion):
            raise ValueError(f"torsion entries must exceed 1: {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion is not a divisibility chain: {self.torsion}")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class SmithForm:
    """``u @ a @ v`` is the rows x cols matrix with ``d`` on its diagonal."""

    d: Tuple[int, ...]
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    def diagonal_matrix(self) -> np.ndarray:
        out = np.zeros((self.u.shape[0], self.v.shape[0]), dtype=object)
        for i, x in enumerate(self.d):
            out[i, i] = x
        return out


def _nearest(x: int, p: int) -> int:
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _smallest_nonzero(block: np.ndarray):
    best = None
    for (i, j), x in np.ndenumerate(block):
        if x != 0 and (best is None or abs(x) < best[0]):
            best = (abs(x), i, j)
    return None if best is None else best[1:]


def hermite_normal_form(a) -> Tuple[np.ndarray, np.ndarray]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ a == h``. ``h`` is in row
    echelon form with positive pivots and every entry above a pivot reduced
    into ``[0, pivot)``.
    """
    h = _exact_copy(a)
    m, n = h.shape
    u = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i, j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(h[i, j]))
            if i0 != r:
                h[[r, i0]] = h[[i0, r]]
                u[[r, i0]] = u[[i0, r]]
            done = True
            for i in range(r + 1, m):
                if h[i, j] != 0:
                    q = h[i, j] // h[r, j]
                    h[i] -= q * h[r]
                    u[i] -= q * u[r]
                    if h[i, j] != 0:
                        done = False
            if done:
                break
        if h[r, j] == 0:
            continue
        if h[r, j] < 0:
            h[r] = -h[r]
            u[r] = -u[r]
        p = h[r, j]
        for i in range(r):
            q = h[i, j] // p
            if q:
                h[i] -= q * h[r]
                u[i] -= q * u[r]
        r += 1
    return h, u


def smith_normal_form(a) -> SmithForm:
    """Smith normal form with unimodular transforms.

    The pivot is always the smallest-magnitude nonzero entry available, and
    rows are folded into the pivot row until it divides the trailing block.
    """
    s = _exact_copy(a)
    m, n = s.shape
    u = identity(m)
    v = identity(n)
    k = min(m, n)
    d = [0] * k
    for t in range(k):
        pos = _smallest_nonzero(s[t:, t:])
        if pos is None:
            break
        bi, bj = pos[0] + t, pos[1] + t
        while True:
            if bi != t:
                s[[t, bi]] = s[[bi, t]]
                u[[t, bi]] = u[[bi, t]]
            if bj != t:
                s[:, [t, bj]] = s[:, [bj, t]]
                v[:, [t, bj]] = v[:, [bj, t]]
            p = s[t, t]
            for i in range(t + 1, m):
                if s[i, t] != 0:
                    q = _nearest(s[i, t], p)
                    s[i] -= q * s[t]
                    u[i] -= q * u[t]
            for j in range(t + 1, n):
                if s[t, j] != 0:
                    q = _nearest(s[t, j], p)
                    s[:, j] -= q * s[:, t]
                    v[:, j] -= q * v[:, t]
            cands = [(abs(s[i, t]), i, t) for i in range(t + 1, m) if s[i, t] != 0]
            cands += [(abs(s[t, j]), t, j) for j in range(t + 1, n) if s[t, j] != 0]
            if cands:
                _, bi, bj = min(cands)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i, j] % p),
                None,
            )
            if bad is None:
                break
            s[t] += s[bad]
            u[t] += u[bad]
            bi, bj = t, t
        if s[t, t] < 0:
            s[t] = -s[t]
            u[t] = -u[t]
        d[t] = s[t, t]
    return SmithForm(tuple(int(x) for x in d), u, v)


def invariant_factors(diagonal: Sequence[int]) -> Tuple[int, ...]:
    """Turn any diagonal into the equivalent divisibility chain (zeros last)."""
    vals = [abs(int(x)) for x in diagonal if x != 0]
    zeros = len(diagonal) - len(vals)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            g = gcd(vals[i], vals[j])
            vals[i], vals[j] = g, vals[i] * vals[j] // g
    return tuple(vals) + (0,) * zeros


def _fits_int64(a: np.ndarray) -> bool:
    return all(abs(x) <= _kernels.INT64_LIMIT for x in a.flat)


def diagonal_invariants(a) -> Tuple[int, ...]:
    """Invariant factors of ``a`` (the ``d`` of its Smith form), no transforms."""
    a = _exact(a)
    if a.size == 0:
        return (0,) * min(a.shape)
    if not _fits_int64(a):
        _, diag, _ = _kernels.diagonalize_numpy(a.copy(), limit=None)
        return invariant_factors([int(x) for x in diag])
    work = a.astype(np.int64)
    ok, diag, t = _kernels.diagonalize_int64(work)
    diag = [int(x) for x in diag[:t]]
    if not ok:
        # finish the trailing block exactly, from where the int64 kernel stopped
        _, rest, _ = _kernels.diagonalize_numpy(_exact(work[t:, t:]), limit=None)
        diag += [int(x) for x in rest]
    return invariant_factors(diag + [0] * (min(a.shape) - len(diag)))


def rank(a) -> int:
    return sum(1 for x in diagonal_invariants(a) if x != 0)


def cokernel_invariants(relations, ambient_rank: int) -> AbelianInvariants:
    """Invariants of Z^ambient_rank modulo the span of the columns of ``relations``."""
    if relations is None:
        return AbelianInvariants(ambient_rank)
    rel = _exact(relations)
    if rel.size == 0:
        return AbelianInvariants(ambient_rank)
    if rel.shape[0] != ambient_rank:
        raise ValueError(
            f"relations have {rel.shape[0]} rows, ambient rank is {ambient_rank}"
        )
    d = diagonal_invariants(rel)
    nonzero = [x for x in d if x != 0]
    return AbelianInvariants(
        ambient_rank - len(nonzero), tuple(x for x in nonzero if x > 1)
    )


def kernel_basis(a) -> np.ndarray:
    """Columns spanning the saturated lattice {x : a @ x = 0}."""
    a = _exact(a)
    cols = a.shape[1]
    h, u = hermite_normal_form(a.T)
    zero_rows = [i for i in range(h.shape[0]) if not np.any(h[i] != 0)]
    basis = u[zero_rows].T if zero_rows else np.zeros((cols, 0), dtype=object)
    return np.ascontiguousarray(basis)
