#!/usr/bin/env python
"""
Compare the diagonalization kernels on realistic relation matrices.

Backends:
1. numba  - compiled int64 loop kernel
2. numpy  - vectorized int64 kernel (what STACKYCHOW_DISABLE_NUMBA=1 selects)
3. exact  - the same vectorized kernel on object arrays of Python ints

Workloads are matrices the package actually builds: brute-force oracle
matrices and high-degree graded-piece relation matrices of random stacky
fans, plus batches of small random matrices. Large dense random matrices are
left out on purpose: their invariant factors alone overflow int64, so every
int64 run would bail out to the exact path.

High-degree relation matrices are a mixed case: the final invariants are
small, but intermediate entries grow past the int64 guard partway through.
The "resumed" column counts those runs; the library finishes them exactly
from the step where the int64 kernel stopped (see the "numba+resume" time).

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --fans 20 --degree 5 --output results.json
"""

import argparse
import json
import time

import numpy as np

from stackychow.exactalg import _kernels, diagonal_invariants, invariant_factors, intmatrix
from stackychow.srchow import all_monomials, graded_piece, presentation
from stackychow.testing import random_fans


def oracle_matrix(fan, k):
    # same construction as graded_piece_oracle, kept here to time the kernel alone
    pres = presentation(fan)
    n = pres.num_vars
    monos = all_monomials(n, k)
    index = {m: i for i, m in enumerate(monos)}
    cols = []
    for m in all_monomials(n, k - 1):
        for row in pres.linear_forms:
            col = [0] * len(monos)
            for rho, c in enumerate(row):
                if c:
                    b = list(m)
                    b[rho] += 1
                    col[index[tuple(b)]] += int(c)
            cols.append(col)
    for gen in pres.nonface_generators:
        if len(gen) <= k:
            for m in all_monomials(n, k - len(gen)):
                b = list(m)
                for i in gen:
                    b[i] += 1
                col = [0] * len(monos)
                col[index[tuple(b)]] = 1
                cols.append(col)
    return np.array(cols, dtype=np.int64).T


def run_backend(name, mats):
    results = []
    start = time.perf_counter()
    for a in mats:
        if name == "numba":
            ok, diag, _ = _kernels.diagonalize_numba(a.copy())
        elif name == "numpy":
            ok, diag, _ = _kernels.diagonalize_numpy(a.copy())
        elif name == "numba+resume":
            ok, diag = True, diagonal_invariants(a)
        else:
            ok, diag, _ = _kernels.diagonalize_numpy(intmatrix(a), limit=None)
        results.append(invariant_factors([int(x) for x in diag]) if ok else None)
    return time.perf_counter() - start, results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--fans", type=int, default=20)
    parser.add_argument("--degree", type=int, default=5)
    parser.add_argument("--high-degree", type=int, default=10)
    parser.add_argument("--small", type=int, default=500, help="number of <=6x6 matrices")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", type=str, default=None)
    args = parser.parse_args()

    if _kernels.NUMBA_AVAILABLE:
        _kernels.diagonalize_numba(np.eye(3, dtype=np.int64))

    workloads = {}
    fans = random_fans(args.seed, args.fans)
    workloads[f"oracle k={args.degree} ({args.fans} fans)"] = [
        oracle_matrix(f, args.degree) for f in fans
    ]
    workloads[f"graded piece k={args.high_degree}"] = [
        np.array(graded_piece(presentation(f), f, args.high_degree).relation_matrix, dtype=np.int64)
        for f in fans
    ]
    rng = np.random.default_rng(args.seed)
    workloads[f"random <=6x6 ({args.small})"] = [
        rng.integers(-9, 10, size=tuple(rng.integers(1, 7, size=2))).astype(np.int64)
        for _ in range(args.small)
    ]

    backends = ["numpy", "exact"]
    if _kernels.NUMBA_AVAILABLE:
        backends = ["numba", "numba+resume"] + backends
    report = {}
    print(f"{'workload':<32}" + "".join(f"{b:>14}" for b in backends) + "   agree  resumed")
    for label, mats in workloads.items():
        row = {}
        answers = {}
        for b in backends:
            elapsed, answers[b] = run_backend(b, mats)
            row[b] = elapsed
        exact = answers["exact"]
        agree = all(
            ans is None or ans == ex for b in backends for ans, ex in zip(answers[b], exact)
        )
        # None means the int64 guard tripped; diagonal_invariants resumes those exactly
        bailouts = {b: sum(ans is None for ans in answers[b]) for b in backends}
        report[label] = {**row, "agree": agree, "bailouts": bailouts}
        print(
            f"{label:<32}"
            + "".join(f"{row[b]:>13.4f}s" for b in backends)
            + f"   {str(agree):<6} "
            + "/".join(str(bailouts[b]) for b in backends)
        )

    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report, fh, indent=2)


if __name__ == "__main__":
    main()
