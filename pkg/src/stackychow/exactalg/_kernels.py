"""Diagonalization kernels used for invariant-factor computations.

Two interchangeable int64 implementations live here: a numba-compiled loop
kernel and a vectorized numpy kernel. ``STACKYCHOW_DISABLE_NUMBA=1`` (or numba
being unavailable) selects the numpy one. Both stop when an entry grows past
``INT64_LIMIT``. The operation in flight is still finished exactly, so the
matrix stays consistent and the caller resumes on exact object arrays from
the step reached.
"""

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = NUMBA_AVAILABLE and os.environ.get(
    "STACKYCHOW_DISABLE_NUMBA", ""
).lower() not in ("1", "true", "yes")

# |q| * |entry| stays below 2**62 while every entry is bounded by this.
INT64_LIMIT = 2**31


@njit(cache=True)
def _nearest_quotient(x, p):
    q = x // p
    r = x - q * p
    if 2 * abs(r) > abs(p):
        q += 1
    return q


@njit(cache=True)
def diagonalize_numba(a):
    """Reduce ``a`` (int64, modified in place) to a diagonal by unimodular ops.

    Returns ``(ok, diag, t)``. When ``ok`` is False an entry exceeded
    INT64_LIMIT during step ``t``: ``diag[:t]`` is final and ``a[t:, t:]`` is
    equivalent to what remains.
    """
    m, n = a.shape
    k = min(m, n)
    diag = np.zeros(k, dtype=np.int64)
    for t in range(k):
        # smallest nonzero of the trailing block becomes the pivot; ties go to
        # the sparsest row/column pair (Markowitz cost) to limit fill-in
        rown = np.zeros(m, dtype=np.int64)
        coln = np.zeros(n, dtype=np.int64)
        for i in range(t, m):
            for j in range(t, n):
                if a[i, j] != 0:
                    rown[i] += 1
                    coln[j] += 1
        best = 0
        bestcost = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i, j])
                if x == 0:
                    continue
                cost = (rown[i] - 1) * (coln[j] - 1)
                if best == 0 or x < best or (x == best and cost < bestcost):
                    best = x
                    bestcost = cost
                    bi = i
                    bj = j
        if bi < 0:
            break
        while True:
            if bi != t:
                for j in range(t, n):
                    tmp = a[t, j]
                    a[t, j] = a[bi, j]
                    a[bi, j] = tmp
            if bj != t:
                for i in range(t, m):
                    tmp = a[i, t]
                    a[i, t] = a[i, bj]
                    a[i, bj] = tmp
            p = a[t, t]
            for i in range(t + 1, m):
                if a[i, t] != 0:
                    q = _nearest_quotient(a[i, t], p)
                    big = False
                    for j in range(t, n):
                        if a[t, j] != 0:
                            x = a[i, j] - q * a[t, j]
                            big |= abs(x) > INT64_LIMIT
                            a[i, j] = x
                    if big:
                        return False, diag, t
            for j in range(t + 1, n):
                if a[t, j] != 0:
                    q = _nearest_quotient(a[t, j], p)
                    big = False
                    for i in range(t, m):
                        if a[i, t] != 0:
                            x = a[i, j] - q * a[i, t]
                            big |= abs(x) > INT64_LIMIT
                            a[i, j] = x
                    if big:
                        return False, diag, t
            best = 0
            bi = t
            bj = t
            for i in range(t + 1, m):
                x = abs(a[i, t])
                if x != 0 and (best == 0 or x < best):
                    best = x
                    bi = i
                    bj = t
            for j in range(t + 1, n):
                x = abs(a[t, j])
                if x != 0 and (best == 0 or x < best):
                    best = x
                    bi = t
                    bj = j
            if best == 0:
                break
        diag[t] = a[t, t]
    return True, diag, k


def diagonalize_numpy(a, limit=INT64_LIMIT):
    """Vectorized counterpart of :func:`diagonalize_numba`.

    Works on int64 arrays (with the overflow guard) and on object arrays of
    Python ints when ``limit`` is None, which makes it exact. Updates touch
    only the rows and columns with a nonzero multiplier.
    """
    m, n = a.shape
    k = min(m, n)
    diag = np.zeros(k, dtype=a.dtype)
    for t in range(k):
        block = a[t:, t:]
        mask = block != 0
        nz = np.argwhere(mask)
        if len(nz) == 0:
            break
        mags = np.abs(block[nz[:, 0], nz[:, 1]]).astype(float)
        cost = (mask.sum(axis=1)[nz[:, 0]] - 1) * (mask.sum(axis=0)[nz[:, 1]] - 1)
        bi, bj = nz[np.lexsort((cost, mags))[0]] + t
        while True:
            if bi != t:
                a[[t, bi], t:] = a[[bi, t], t:]
            if bj != t:
                a[t:, [t, bj]] = a[t:, [bj, t]]
            p = a[t, t]
            rows = t + 1 + np.flatnonzero(a[t + 1 :, t])
            if len(rows):
                q = _nearest_vec(a[rows, t], p)
                cols = t + np.flatnonzero(a[t, t:])
                sub = a[np.ix_(rows, cols)] - np.outer(q, a[t, cols])
                a[np.ix_(rows, cols)] = sub
                if limit is not None and np.abs(sub).max() > limit:
                    return False, diag, t
            cols = t + 1 + np.flatnonzero(a[t, t + 1 :])
            if len(cols):
                q = _nearest_vec(a[t, cols], p)
                rows = t + np.flatnonzero(a[t:, t])
                sub = a[np.ix_(rows, cols)] - np.outer(a[rows, t], q)
                a[np.ix_(rows, cols)] = sub
                if limit is not None and np.abs(sub).max() > limit:
                    return False, diag, t
            col = a[t + 1 :, t]
            row = a[t, t + 1 :]
            cands = np.concatenate([np.abs(col), np.abs(row)])
            nzc = np.flatnonzero(cands != 0)
            if len(nzc) == 0:
                break
            c = nzc[int(np.argmin(cands[nzc]))]
            if c < len(col):
                bi, bj = t + 1 + c, t
            else:
                bi, bj = t, t + 1 + (c - len(col))
        diag[t] = a[t, t]
    return True, diag, k


def _nearest_vec(x, p):
    q = x // p
    r = x - q * p
    return q + np.where(2 * np.abs(r) > abs(p), 1, 0)


def diagonalize_int64(a):
    """Dispatch to the selected int64 kernel; ``a`` is consumed."""
    if USE_NUMBA:
        return diagonalize_numba(a)
    return diagonalize_numpy(a)
