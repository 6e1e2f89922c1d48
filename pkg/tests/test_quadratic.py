import random
from fractions import Fraction

import pytest

from kslim.linalg import Mat
from kslim.quadratic import (DegenerateFormError, NotIsotropicError, QuadSpace, cayley_orthogonal,
                             find_isotropic, hyperbolic_extension, lagrange_diagonalize, random_invertible,
                             random_skew, signature)


def test_hyperbolic_plane_signature():
    H = QuadSpace(Mat([[0, 1], [1, 0]], 2))
    assert signature(H) == (1, 1)
    assert hyperbolic_extension(H, (1, 0)) == ((1, 1), (1, -1))


def test_lagrange_with_zero_diagonal():
    Q = QuadSpace(Mat([[0, 1, 0], [1, 0, 0], [0, 0, 3]], 3))
    P, D = lagrange_diagonalize(Q)
    assert P.T @ Q.gram @ P == Mat.diag(D)
    assert P.rank() == 3
    assert signature(Q) == (2, 1)


def test_degenerate_form_rejected():
    with pytest.raises(DegenerateFormError):
        lagrange_diagonalize(QuadSpace(Mat([[1, 1], [1, 1]], 2)))
    assert QuadSpace(Mat([[1, 1], [1, 1]], 2)).is_degenerate()


def test_gram_must_be_symmetric_and_rational():
    with pytest.raises(ValueError):
        QuadSpace(Mat([[1, 2], [0, 1]], 2))


@pytest.mark.parametrize("seed", range(10))
def test_signature_congruence_invariant(seed):
    rng = random.Random(seed)
    Q = QuadSpace.diagonal([2, 2, -2, -2, -2])
    P = random_invertible(5, rng)
    assert signature(Q.congruent(P)) == (2, 3)


def test_hyperbolic_extension_random():
    rng = random.Random(7)
    bases = [QuadSpace.diagonal(g) for g in ([2, 2, -2], [2, -2, 2, -2], [1, -1, 3, -3, 5])]
    done = 0
    while done < 100:
        Q = rng.choice(bases)
        v = find_isotropic(Q)
        v = cayley_orthogonal(Q, rng).apply(v)
        x, y = hyperbolic_extension(Q, v)
        assert Q.norm(x) == 2 and Q.norm(y) == -2 and Q.inner(x, y) == 0
        assert tuple(a + b for a, b in zip(x, y)) == tuple(2 * c for c in v)
        done += 1


def test_hyperbolic_extension_errors():
    Q = QuadSpace.diagonal([1, -1])
    with pytest.raises(NotIsotropicError):
        hyperbolic_extension(Q, (1, 0))
    with pytest.raises(ValueError):
        hyperbolic_extension(Q, (0, 0))


def test_random_skew_and_cayley():
    rng = random.Random(1)
    Q = QuadSpace.diagonal([2, -2, 2, Fraction(-1, 3)])
    for _ in range(5):
        assert Q.in_so(random_skew(Q, rng))
        g = cayley_orthogonal(Q, rng)
        assert g.T @ Q.gram @ g == Q.gram


def test_find_isotropic():
    assert find_isotropic(QuadSpace.diagonal([1, 1, 1])) is None
    v = find_isotropic(QuadSpace.diagonal([2, 2, -2]))
    assert v is not None and any(v)
