import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals, scalars
from kslim.linalg import (DimensionError, Mat, Subspace, annihilator, apply_to, det, exp_nilpotent,
                          hermitian_definiteness, image, intersect, kernel, preimage, quotient_basis, rref,
                          subspace_sum)
from kslim.scalars import GaussianRational


def leibniz_det(rows):
    """Determinant as the signed sum over permutations; independent of elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, p in enumerate(perm):
            term = term * rows[i][p]
        total = total + term
    return total


def minor_rank(M: Mat) -> int:
    """Largest k with a nonzero k x k minor."""
    for k in range(min(M.rows, M.cols), 0, -1):
        for rs in itertools.combinations(range(M.rows), k):
            for cs in itertools.combinations(range(M.cols), k):
                if leibniz_det([[M[i, j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


def random_gaussian_matrix(rng, rows, cols, rank):
    """Product of random rows x rank and rank x cols factors over Q(i)."""
    def entry():
        return GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
    A = Mat([[entry() for _ in range(rank)] for _ in range(rows)], rank)
    B = Mat([[entry() for _ in range(cols)] for _ in range(rank)], cols)
    return A @ B


def matrices(n_rows, n_cols, elems=scalars):
    return st.lists(st.lists(elems, min_size=n_cols, max_size=n_cols),
                    min_size=n_rows, max_size=n_rows).map(lambda rows: Mat(rows, n_cols))


@pytest.mark.parametrize("rank", [1, 2, 3, 4, 5])
def test_rank_matches_minor_expansion(rank):
    rng = random.Random(rank)
    M = random_gaussian_matrix(rng, 5, 5, rank)
    assert M.rank() == minor_rank(M)


@settings(max_examples=40)
@given(matrices(4, 4))
def test_det_matches_leibniz(M):
    assert det(M) == leibniz_det([list(M.row(i)) for i in range(4)])


@settings(max_examples=40)
@given(matrices(3, 5))
def test_rref_idempotent_and_rank_nullity(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert len(piv) + kernel(M).dim == M.cols
    assert image(M).dim == len(piv)
    for v in kernel(M).basis:
        assert not any(M.apply(v))


@settings(max_examples=30)
@given(matrices(3, 3, rationals))
def test_inverse(M):
    if M.rank() == 3:
        assert M @ M.inverse() == Mat.identity(3)
    else:
        with pytest.raises(ZeroDivisionError):
            M.inverse()


@settings(max_examples=30)
@given(matrices(2, 5), matrices(3, 5))
def test_sum_intersection_dimension(A, B):
    S, T = Subspace.span(A.entries, 5), Subspace.span(B.entries, 5)
    both = intersect(S, T)
    assert subspace_sum(S, T).dim + both.dim == S.dim + T.dim
    assert S.contains_subspace(both) and T.contains_subspace(both)


def test_annihilator():
    S = Subspace.span([(1, 2, 0)], 3)
    ann = annihilator(S)
    assert ann.dim == 2
    assert all(sum(a * b for a, b in zip(v, (1, 2, 0))) == 0 for v in ann.basis)


def test_preimage_hand_solved():
    # N e1 = -e3, N e2 = e3, N e3 = e1 + e2; N^{-1}(span(e1 + e2)) = span(e1 + e2, e3)
    N = Mat.from_columns([(0, 0, -1), (0, 0, 1), (1, 1, 0)])
    target = Subspace.span([(1, 1, 0)], 3)
    assert preimage(N, target) == Subspace.span([(1, 1, 0), (0, 0, 1)], 3)
    assert image(N @ N) == target


def test_apply_and_quotient():
    M = Mat([[1, 0, 0], [0, 0, 0], [0, 0, 1]], 3)
    full = Subspace.full(3)
    assert apply_to(M, full).dim == 2
    T = Subspace.span([(0, 1, 0)], 3)
    qb = quotient_basis(full, T)
    assert len(qb) == 2
    assert subspace_sum(Subspace.span(qb, 3), T) == full


def test_subspace_equality_is_canonical():
    a = Subspace.span([(1, 1, 0), (1, -1, 0)], 3)
    b = Subspace.span([(2, 0, 0), (0, 3, 0)], 3)
    assert a == b
    assert a.conj() == a


def test_dimension_errors():
    with pytest.raises(DimensionError):
        Mat([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Mat.identity(2) @ Mat.identity(3)
    with pytest.raises(DimensionError):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))


def test_hermitian_definiteness():
    i = GaussianRational(0, 1)
    assert hermitian_definiteness(Mat([[2, i], [-i, 2]], 2)) == 1
    assert hermitian_definiteness(Mat([[-2, i], [-i, -2]], 2)) == -1
    assert hermitian_definiteness(Mat([[1, 2], [2, 1]], 2)) == 0
    with pytest.raises(ValueError):
        hermitian_definiteness(Mat([[1, i], [i, 1]], 2))


def test_exp_nilpotent():
    N = Mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 3)
    E = exp_nilpotent(N, 2)
    assert E == Mat([[1, 2, 2], [0, 1, 2], [0, 0, 1]], 3)
    assert exp_nilpotent(N, -2) @ E == Mat.identity(3)
    with pytest.raises(ValueError):
        exp_nilpotent(Mat.identity(2))
