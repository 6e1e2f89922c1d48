"""Exact dense matrices and the subspace calculus built on reduced row echelon form.

Everything works over Q or Q(i); entries are ``Fraction`` or
:class:`~kslim.scalars.GaussianRational`. Vectors are plain tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import GaussianRational, Scalar, conj

Vector = tuple


class DimensionError(ValueError):
    """Operands live in incompatible ambient dimensions."""


def normalize(x: Scalar) -> Scalar:
    """Canonical representative: Gaussian rationals with zero imaginary part become Fractions."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    return Fraction(x)


def dot(v: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} vs {len(w)}")
    s = Fraction(0)
    for a, b in zip(v, w):
        if a and b:
            s = s + a * b
    return normalize(s)


def vec_conj(v: Sequence[Scalar]) -> Vector:
    return tuple(conj(x) for x in v)


def vec_add(v, w) -> Vector:
    return tuple(normalize(a + b) for a, b in zip(v, w))


def vec_sub(v, w) -> Vector:
    return tuple(normalize(a - b) for a, b in zip(v, w))


def vec_scale(c, v) -> Vector:
    return tuple(normalize(c * a) for a in v)


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


class Mat:
    """Immutable exact matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[Scalar]], cols: int | None = None):
        rows_ = tuple(tuple(normalize(x) for x in row) for row in entries)
        if cols is None:
            if not rows_:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(rows_[0])
        for row in rows_:
            if len(row) != cols:
                raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "entries", rows_)
        object.__setattr__(self, "rows", len(rows_))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "Mat":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int | None = None) -> "Mat":
        if not columns:
            return cls([[] for _ in range(rows or 0)], 0)
        n = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(n)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> "Mat":
        return Mat([self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def conj(self) -> "Mat":
        return Mat([vec_conj(r) for r in self.entries], self.cols)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def is_rational(self) -> bool:
        return not any(isinstance(x, GaussianRational) for r in self.entries for x in r)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.entries], self.cols)

    def scale(self, c: Scalar) -> "Mat":
        return Mat([[c * a for a in r] for r in self.entries], self.cols)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, GaussianRational)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = other.entries
        out = []
        for r in self.entries:
            acc = [Fraction(0)] * other.cols
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in enumerate(other_rows[k]):
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Mat(out, other.cols)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        """Matrix-vector product ``M v``."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(r, v) for r in self.entries)

    def __pow__(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Mat":
        n = self.rows
        if n != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        aug = Mat([list(r) + list(basis_vector(n, i)) for i, r in enumerate(self.entries)], 2 * n)
        R, piv = rref(aug)
        if piv != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Mat([R.row(i)[n:] for i in range(n)], n)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Mat({self.rows}x{self.cols}: {body})"


def rref(M: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form of ``M`` and its pivot columns.

    Elimination only visits the nonzero entries of each pivot row, which keeps
    the sparse left-multiplication matrices of the Clifford module cheap.
    """
    rows = [list(r) for r in M.entries]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        prow = [normalize(x * inv) if x else x for x in prow]
        rows[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            row = rows[i]
            for j in support:
                row[j] = normalize(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return Mat(rows, ncols), pivots


def kernel_vectors(M: Mat) -> list[Vector]:
    R, piv = rref(M)
    pivset = set(piv)
    out = []
    for f in range(M.cols):
        if f in pivset:
            continue
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for k, p in enumerate(piv):
            x[p] = normalize(-R[k, f])
        out.append(tuple(x))
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n stored as the nonzero rows of a reduced echelon matrix.

    Equality is entry-wise equality of the echelon rows, which is canonical.
    """

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient: int) -> "Subspace":
        vs = [tuple(v) for v in vectors]
        for v in vs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient}")
        if not vs:
            return cls(ambient, ())
        R, piv = rref(Mat(vs, ambient))
        return cls(ambient, tuple(R.row(i) for i in range(len(piv))))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(basis_vector(ambient, i) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def matrix(self) -> Mat:
        """Basis as the rows of a ``dim x ambient`` matrix."""
        return Mat(self.basis, self.ambient)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient:
            raise DimensionError("vector length does not match ambient dimension")
        residual = list(v)
        for row, p in zip(self.basis, self.pivots()):
            c = residual[p]
            if c:
                residual = [a - c * b if b else a for a, b in zip(residual, row)]
        return not any(residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(self.contains(v) for v in other.basis)

    def conj(self) -> "Subspace":
        return Subspace(self.ambient, tuple(vec_conj(r) for r in self.basis))

    def is_rational(self) -> bool:
        return not any(isinstance(x, GaussianRational) for r in self.basis for x in r)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient})"


def _check(A: Subspace, B: Subspace):
    if A.ambient != B.ambient:
        raise DimensionError(f"ambient dimensions differ: {A.ambient} vs {B.ambient}")


def kernel(M: Mat) -> Subspace:
    return Subspace.span(kernel_vectors(M), M.cols)


def image(M: Mat) -> Subspace:
    """Column space of ``M``."""
    return Subspace.span((M.column(j) for j in range(M.cols)), M.rows)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check(A, B)
    return Subspace.span(A.basis + B.basis, A.ambient)


def annihilator(S: Subspace) -> Subspace:
    """``{y : sum(y_i x_i) = 0 for x in S}`` under the bilinear (not Hermitian) pairing."""
    if S.dim == 0:
        return Subspace.full(S.ambient)
    return kernel(S.matrix())


def intersect(A: Subspace, B: Subspace) -> Subspace:
    _check(A, B)
    rows = annihilator(A).basis + annihilator(B).basis
    if not rows:
        return Subspace.full(A.ambient)
    return kernel(Mat(rows, A.ambient))


def apply_to(M: Mat, S: Subspace) -> Subspace:
    """Image ``M(S)`` of a subspace."""
    if M.cols != S.ambient:
        raise DimensionError("matrix does not act on this subspace's ambient space")
    return Subspace.span((M.apply(v) for v in S.basis), M.rows)


def preimage(M: Mat, S: Subspace) -> Subspace:
    """``{x : M x in S}``."""
    if M.rows != S.ambient:
        raise DimensionError("matrix target does not match subspace ambient dimension")
    ann = annihilator(S)
    if ann.dim == 0:
        return Subspace.full(M.cols)
    return kernel(ann.matrix() @ M)


def quotient_basis(S: Subspace, T: Subspace) -> list[Vector]:
    """Vectors of ``S`` whose classes form a basis of ``S / T`` (requires ``T <= S``)."""
    _check(S, T)
    chosen: list[Vector] = []
    current = T
    for v in S.basis:
        if not current.contains(v):
            chosen.append(v)
            current = Subspace.span(current.basis + (v,), S.ambient)
    return chosen


def det(M: Mat) -> Scalar:
    """Determinant by Gaussian elimination."""
    if M.rows != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    rows = [list(r) for r in M.entries]
    n = M.rows
    d: Scalar = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return normalize(d)


def hermitian_definiteness(M: Mat) -> int:
    """Return +1 / -1 if the Hermitian matrix ``M`` is positive / negative definite, else 0.

    Uses Sylvester's criterion through elimination pivots: the k-th pivot is the
    ratio of consecutive leading principal minors, all of which are real.
    """
    n = M.rows
    if n == 0:
        return 0
    if M != M.T.conj():
        raise ValueError("matrix is not Hermitian")
    rows = [list(r) for r in M.entries]
    signs = []
    for c in range(n):
        piv = rows[c][c]
        if not piv:
            return 0
        piv = normalize(piv)
        if isinstance(piv, GaussianRational):
            raise ArithmeticError("non-real pivot in Hermitian elimination")
        signs.append(1 if piv > 0 else -1)
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    if all(s == 1 for s in signs):
        return 1
    if all(s == -1 for s in signs):
        return -1
    return 0


def exp_nilpotent(N: Mat, s: Scalar = 1) -> Mat:
    """``exp(s N)`` for a nilpotent square matrix, as a finite sum."""
    n = N.rows
    out = Mat.identity(n)
    term = Mat.identity(n)
    for k in range(1, n + 1):
        term = (term @ N).scale(Fraction(1, k) * s)
        if term.is_zero():
            return out
        out = out + term
    raise ValueError("matrix is not nilpotent")
