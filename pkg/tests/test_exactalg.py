import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackychow.exactalg import (
    AbelianInvariants,
    cokernel_invariants,
    diagonal_invariants,
    hermite_normal_form,
    identity,
    intmatrix,
    kernel_basis,
    smith_normal_form,
)
from stackychow.exactalg import _kernels

from oracles import det, hnf_by_search, invariant_factors_by_minors, is_row_hnf

small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


def as_lists(a):
    return [[int(x) for x in row] for row in a]


def test_hnf_identity():
    h, u = hermite_normal_form(identity(2))
    assert as_lists(h) == [[1, 0], [0, 1]]
    assert as_lists(u) == [[1, 0], [0, 1]]


def test_hnf_small_matches_search():
    a = [[2, 4], [1, 3]]
    h, u = hermite_normal_form(a)
    assert {tuple(map(tuple, as_lists(h)))} == hnf_by_search(a, bound=3)
    assert as_lists(h) == [[1, 1], [0, 2]]
    assert as_lists(u.dot(intmatrix(a))) == as_lists(h)


def test_hnf_zero():
    h, u = hermite_normal_form(np.zeros((2, 3), dtype=object))
    assert as_lists(h) == [[0, 0, 0], [0, 0, 0]]
    assert as_lists(u) == [[1, 0], [0, 1]]


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_hnf_properties(a):
    h, u = hermite_normal_form(a)
    assert abs(det(as_lists(u))) == 1
    assert as_lists(u.dot(intmatrix(a))) == as_lists(h)
    assert is_row_hnf(as_lists(h))


@pytest.mark.parametrize(
    "a, d",
    [
        ([[2, -1, -1], [-1, 2, -1]], (1, 3)),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
        ([[2, -3]], (1,)),
    ],
)
def test_smith_examples(a, d):
    assert smith_normal_form(a).d == d
    assert tuple(invariant_factors_by_minors(a)) == d


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_smith_properties(a):
    s = smith_normal_form(a)
    assert as_lists(s.u.dot(intmatrix(a)).dot(s.v)) == as_lists(s.diagonal_matrix())
    nonzero = [x for x in s.d if x]
    assert list(s.d[: len(nonzero)]) == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert abs(det(as_lists(s.u))) == 1 and abs(det(as_lists(s.v))) == 1
    assert list(s.d) == invariant_factors_by_minors(a)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_hermite_then_smith_same_invariants(a):
    h, _ = hermite_normal_form(a)
    assert smith_normal_form(h).d == smith_normal_form(a).d


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_kernels_agree(a):
    exact = smith_normal_form(a).d
    ok, diag, _ = _kernels.diagonalize_numba(np.array(a, dtype=np.int64))
    assert ok
    from stackychow.exactalg import invariant_factors

    assert invariant_factors(list(diag)) == exact
    ok, diag, _ = _kernels.diagonalize_numpy(np.array(a, dtype=np.int64))
    assert ok and invariant_factors(list(diag)) == exact
    _, diag, _ = _kernels.diagonalize_numpy(intmatrix(a), limit=None)
    assert invariant_factors(list(diag)) == exact


def test_overflow_falls_back_to_exact():
    big = 2**70
    a = [[big, 3], [5, big + 1]]
    assert diagonal_invariants(a) == (1, big * (big + 1) - 15)
    # entries fit, but elimination grows past the guard: reported, not wrapped
    grows = [[2**31, 1], [1, 2**31]]
    ok, _, t = _kernels.diagonalize_numba(np.array(grows, dtype=np.int64))
    assert not ok and t == 0
    ok, _, t = _kernels.diagonalize_numpy(np.array(grows, dtype=np.int64))
    assert not ok and t == 0
    assert diagonal_invariants(grows) == (1, 2**62 - 1)


def test_resume_after_bailout_matches_exact():
    # a unimodular block in front of the growing one: the kernel gets past
    # step 0 before bailing, and the exact path finishes from there
    a = [[1, 2, 0, 0], [3, 7, 0, 0], [0, 0, 2**31, 1], [0, 0, 1, 2**31]]
    ok, diag, t = _kernels.diagonalize_numba(np.array(a, dtype=np.int64))
    assert not ok and t >= 1
    assert diagonal_invariants(a) == smith_normal_form(a).d


def test_cokernel_examples():
    rel = intmatrix([[2, -1], [-1, 2], [-1, -1]])
    assert cokernel_invariants(rel, 3) == AbelianInvariants(1, (3,))
    assert cokernel_invariants(np.zeros((3, 0), dtype=object), 3) == AbelianInvariants(3)
    assert cokernel_invariants(None, 3) == AbelianInvariants(3)
    assert cokernel_invariants(2 * identity(2), 2) == AbelianInvariants(0, (2, 2))


def test_cokernel_shape_mismatch():
    with pytest.raises(ValueError):
        cokernel_invariants(identity(2), 3)


@settings(max_examples=100, deadline=None)
@given(small_matrices, st.randoms(use_true_random=False), st.integers(0, 3))
def test_cokernel_permutation_and_zero_columns(a, rnd, zeros):
    a = intmatrix(a)
    base = cokernel_invariants(a, a.shape[0])
    rows = list(range(a.shape[0]))
    cols = list(range(a.shape[1]))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    b = a[rows][:, cols]
    b = np.hstack([b, np.zeros((a.shape[0], zeros), dtype=object)])
    assert cokernel_invariants(b, a.shape[0]) == base


def test_abelian_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
    assert str(AbelianInvariants(1, (3, 3))) == "Z ⊕ Z/3 ⊕ Z/3"
    assert str(AbelianInvariants(2)) == "Z^2"
    assert str(AbelianInvariants(0)) == "0"


def test_kernel_basis_examples():
    assert kernel_basis([[1, 0], [0, 1]]).shape == (2, 0)
    k = kernel_basis([[1, 1]])
    assert k.shape == (2, 1)
    assert sorted(as_lists(k.T)[0]) == [-1, 1]
    rays = [[2, -1], [-1, 2], [-1, -1]]
    assert kernel_basis(rays).shape == (2, 0)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_kernel_basis_saturated(a):
    a = intmatrix(a)
    k = kernel_basis(a)
    assert not np.any(a.dot(k) != 0) if k.size else True
    rank = sum(1 for x in smith_normal_form(a).d if x)
    assert k.shape[1] == a.shape[1] - rank
    if k.shape[1]:
        # saturated: the basis columns extend to a unimodular matrix
        assert all(x == 1 for x in smith_normal_form(k).d)
