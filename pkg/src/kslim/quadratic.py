"""Rational quadratic spaces: inner products, Lagrange diagonalization, signatures,
hyperbolic planes through isotropic vectors, and a few witness generators."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import DimensionError, Mat, Vector, basis_vector, dot, normalize, vec_add, vec_scale, vec_sub
from .scalars import Scalar, conj


class DegenerateFormError(ValueError):
    pass


class NotIsotropicError(ValueError):
    pass


@dataclass(frozen=True)
class QuadSpace:
    """A non-degenerate rational quadratic space given by its Gram matrix.

    ``q(v, w) = v^T G w`` is the bilinear form; ``q(v, v)`` is the quadratic form
    itself (no factor 1/2 anywhere).
    """

    gram: Mat

    def __post_init__(self):
        G = self.gram
        if G.rows != G.cols:
            raise DimensionError("Gram matrix must be square")
        if not G.is_rational():
            raise ValueError("Gram matrix must be rational")
        if G != G.T:
            raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def diagonal(cls, values: Sequence) -> "QuadSpace":
        return cls(Mat.diag([Fraction(v) for v in values]))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def inner(self, v: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionError(f"vectors must have length {self.dim}")
        return dot(v, self.gram.apply(w))

    def norm(self, v: Sequence[Scalar]) -> Scalar:
        return self.inner(v, v)

    def hermitian(self, v: Sequence[Scalar]) -> Scalar:
        """``q(v, conj v)``; real for any v."""
        return self.inner(v, tuple(conj(x) for x in v))

    def is_isotropic(self, v: Sequence[Scalar]) -> bool:
        return any(v) and self.norm(v) == 0

    def in_so(self, N: Mat) -> bool:
        """Whether ``N`` is skew for q, i.e. ``N^T G + G N = 0``."""
        return (N.T @ self.gram + self.gram @ N).is_zero()

    def is_degenerate(self) -> bool:
        return self.gram.rank() < self.dim

    def congruent(self, P: Mat) -> "QuadSpace":
        """The form in new coordinates ``x = P y``: Gram ``P^T G P``."""
        return QuadSpace(P.T @ self.gram @ P)

    def orthogonal_sum(self, other: "QuadSpace") -> "QuadSpace":
        n, m = self.dim, other.dim
        rows = [list(self.gram.row(i)) + [0] * m for i in range(n)]
        rows += [[0] * n + list(other.gram.row(i)) for i in range(m)]
        return QuadSpace(Mat(rows, n + m))


def lagrange_diagonalize(Q: QuadSpace) -> tuple[Mat, list[Fraction]]:
    """Return ``(P, D)`` with ``P^T G P = diag(D)``, ``P`` invertible, all ``D`` nonzero.

    Already-diagonal forms return the identity. When the remaining diagonal is
    zero a column ``e_k + e_j`` with ``q(e_k, e_j) != 0`` is used as pivot.
    """
    n = Q.dim
    cols = [list(basis_vector(n, i)) for i in range(n)]

    def gram_of(cs):
        P = Mat.from_columns(cs)
        return P.T @ Q.gram @ P

    for k in range(n):
        A = gram_of(cols)
        if A[k, k] == 0:
            j = next((j for j in range(k + 1, n) if A[j, j] != 0), None)
            if j is not None:
                cols[k], cols[j] = cols[j], cols[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k, j] != 0), None)
                if j is None:
                    raise DegenerateFormError("quadratic form is degenerate")
                cols[k] = [a + b for a, b in zip(cols[k], cols[j])]
            A = gram_of(cols)
        akk = A[k, k]
        for j in range(k + 1, n):
            if A[k, j] != 0:
                c = A[k, j] / akk
                cols[j] = [a - c * b for a, b in zip(cols[j], cols[k])]
    P = Mat.from_columns(cols)
    D = P.T @ Q.gram @ P
    diag = [D[i, i] for i in range(n)]
    if any(x == 0 for x in diag):
        raise DegenerateFormError("quadratic form is degenerate")
    return P, diag


def signature(Q: QuadSpace) -> tuple[int, int]:
    """(positive count, negative count) of a non-degenerate form."""
    _, D = lagrange_diagonalize(Q)
    p = sum(1 for x in D if x > 0)
    return p, len(D) - p


def hyperbolic_extension(Q: QuadSpace, v: Sequence[Scalar]) -> tuple[Vector, Vector]:
    """Embed an isotropic ``v`` in a hyperbolic plane: ``q(x,x)=2, q(y,y)=-2, q(x,y)=0, x+y=2v``.

    Picks the first basis vector ``e_k`` with ``q(v, e_k) != 0``, rescales it to
    ``z`` with ``q(v, z) = 1``, sets ``w = z - q(z,z)/2 * v`` and returns
    ``(v + w, v - w)``.
    """
    v = tuple(normalize(x) for x in v)
    if len(v) != Q.dim:
        raise DimensionError(f"vector must have length {Q.dim}")
    if not any(v):
        raise ValueError("zero vector")
    if Q.norm(v) != 0:
        raise NotIsotropicError(f"q(v, v) = {Q.norm(v)} is not zero")
    for k in range(Q.dim):
        e = basis_vector(Q.dim, k)
        c = Q.inner(v, e)
        if c != 0:
            z = vec_scale(1 / c, e)
            break
    else:
        raise DegenerateFormError("no vector pairs nontrivially with v")
    w = vec_sub(z, vec_scale(Fraction(1, 2) * Q.norm(z), v))
    return vec_add(v, w), vec_sub(v, w)


def find_isotropic(Q: QuadSpace, height: int = 3) -> Vector | None:
    """First nonzero integer vector with entries in ``[-height, height]`` and ``q(v,v) = 0``.

    A witness search, not a decision procedure; returns ``None`` when nothing
    short enough exists.
    """
    rng = range(-height, height + 1)
    for total in range(1, Q.dim * height + 1):
        for v in itertools.product(rng, repeat=Q.dim):
            if sum(abs(x) for x in v) != total:
                continue
            vf = tuple(Fraction(x) for x in v)
            if Q.norm(vf) == 0:
                return vf
    return None


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> Mat:
    """Random invertible rational matrix with small entries (unit triangular factors
    times a diagonal of small rationals, then a random permutation)."""
    while True:
        L = Mat([[Fraction(rng.randint(-bound, bound)) if j < i else Fraction(int(i == j))
                  for j in range(n)] for i in range(n)], n)
        U = Mat([[Fraction(rng.randint(-bound, bound)) if j > i else Fraction(int(i == j))
                  for j in range(n)] for i in range(n)], n)
        D = Mat.diag([Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3])) for _ in range(n)])
        perm = list(range(n))
        rng.shuffle(perm)
        Pm = Mat([[int(perm[i] == j) for j in range(n)] for i in range(n)], n)
        M = Pm @ L @ D @ U
        if M.rank() == n:
            return M


def random_skew(Q: QuadSpace, rng: random.Random, bound: int = 2) -> Mat:
    """Random element of so(V, q): ``G^{-1} S`` with S skew-symmetric."""
    n = Q.dim
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = Fraction(rng.randint(-bound, bound))
            S[i][j], S[j][i] = a, -a
    return Q.gram.inverse() @ Mat(S, n)


def cayley_orthogonal(Q: QuadSpace, rng: random.Random, bound: int = 2) -> Mat:
    """Random rational isometry of ``Q`` via the Cayley transform ``(1 - A)^{-1}(1 + A)``."""
    n = Q.dim
    one = Mat.identity(n)
    while True:
        A = random_skew(Q, rng, bound)
        try:
            return (one - A).inverse() @ (one + A)
        except ZeroDivisionError:
            continue
