"""Exact feasibility of small linear systems by Fourier-Motzkin elimination.

Solves ``A_eq x = b_eq`` with ``x_i >= 0`` for the indices in ``nonneg``, over
the rationals, and returns a witness point or None.
"""

from fractions import Fraction
from math import gcd, lcm


def _normalize(coeffs, rhs):
    # scale an inequality row to coprime integers so duplicates collapse
    den = 1
    for c in (*coeffs, rhs):
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in (*coeffs, rhs)]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def find_point(eqs, nvars, nonneg):
    """Return a rational point satisfying the system, or None if infeasible.

    ``eqs`` is a list of ``(coeffs, rhs)`` pairs meaning ``coeffs . x == rhs``.
    """
    nonneg = set(nonneg)
    eqs = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in eqs]
    ineqs = [
        tuple(-1 if j == i else 0 for j in range(nvars)) + (0,)
        for i in sorted(nonneg)
    ]
    ineqs = [([Fraction(c) for c in row[:-1]], Fraction(row[-1])) for row in ineqs]

    # equalities: substitute a pivot variable everywhere
    substitutions = []
    remaining = list(eqs)
    while remaining:
        coeffs, rhs = remaining.pop()
        support = [j for j, c in enumerate(coeffs) if c != 0]
        if not support:
            if rhs != 0:
                return None
            continue
        free = [j for j in support if j not in nonneg]
        p = free[0] if free else support[0]
        cp = coeffs[p]
        expr = [-c / cp if j != p else Fraction(0) for j, c in enumerate(coeffs)]
        const = rhs / cp
        substitutions.append((p, expr, const))

        def subst(row, r):
            f = row[p]
            if f == 0:
                return row, r
            new = [c + f * e for c, e in zip(row, expr)]
            new[p] = Fraction(0)
            return new, r - f * const

        remaining = [subst(c, r) for c, r in remaining]
        ineqs = [subst(c, r) for c, r in ineqs]

    pivots = {p for p, _, _ in substitutions}
    order = [j for j in range(nvars) if j not in pivots]

    system = {_normalize(c, r) for c, r in ineqs}
    history = []
    for var in order:
        history.append((var, system))
        pos = [row for row in system if row[0][var] > 0]
        neg = [row for row in system if row[0][var] < 0]
        new = {row for row in system if row[0][var] == 0}
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = pc[var], -nc[var]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                new.add(_normalize(coeffs, b * pr + a * nr))
        system = new
    for coeffs, rhs in system:
        if rhs < 0:
            return None

    x = [Fraction(0)] * nvars
    for var, rows in reversed(history):
        lo, hi = None, None
        for coeffs, rhs in rows:
            c = coeffs[var]
            if c == 0:
                continue
            rest = sum(coeffs[j] * x[j] for j in range(nvars) if j != var)
            bound = Fraction(rhs - rest, c)
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = min(hi, Fraction(0))
        elif hi is None:
            val = max(lo, Fraction(0))
        else:
            val = lo if not (lo <= 0 <= hi) else Fraction(0)
        x[var] = val
    for p, expr, const in reversed(substitutions):
        x[p] = const + sum(e * x[j] for j, e in enumerate(expr) if e != 0)
    return x
