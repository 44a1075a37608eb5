"""Independent reference computations, deliberately naive."""

from itertools import combinations, product
from math import gcd


def det(rows):
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_divisors(a):
    """gcd of all i x i minors, for i = 1 .. min(rows, cols)."""
    m, n = len(a), len(a[0]) if a else 0
    out = []
    for size in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), size):
            for cols in combinations(range(n), size):
                g = gcd(g, det([[a[r][c] for c in cols] for r in rows]))
        out.append(g)
    return out


def invariant_factors_by_minors(a):
    divs = determinantal_divisors(a)
    out, prev = [], 1
    for g in divs:
        if g == 0:
            out.append(0)
        else:
            out.append(g // prev)
            prev = g
    return out


def is_row_hnf(h):
    pivot_col = -1
    for row in h:
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            pivot_col = float("inf")
            continue
        j = nz[0]
        if j <= pivot_col or row[j] <= 0:
            return False
        pivot_col = j
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x != 0]
        if nz:
            j = nz[0]
            if any(not 0 <= h[r][j] < row[j] for r in range(i)):
                return False
    return True


def hnf_by_search(a, bound=5):
    """All row-HNFs u @ a with u unimodular and entries of u within bound."""
    m = len(a)
    found = set()
    for flat in product(range(-bound, bound + 1), repeat=m * m):
        u = [flat[i * m : (i + 1) * m] for i in range(m)]
        if abs(det(u)) != 1:
            continue
        h = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(len(a[0]))] for i in range(m)]
        if is_row_hnf(h):
            found.add(tuple(map(tuple, h)))
    return found
