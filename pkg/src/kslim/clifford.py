"""Exact Clifford algebras ``Cl(V, q)`` over Q and Q(i).

Elements are sparse maps from blade bitmasks to scalars. Blades are products of
an orthogonal frame ``f_1, ..., f_r`` (the columns of the Lagrange change of
basis), so the product of two blades is a signed, scaled blade and the whole
multiplication table is a lookup.

The relation used throughout is ``v * v = q(v, v)``, hence
``v w + w v = 2 q(v, w)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .linalg import Mat, Subspace, Vector, image, normalize, rref
from .quadratic import QuadSpace, lagrange_diagonalize
from .scalars import GaussianRational, Scalar, conj


class NotInSoError(ValueError):
    """Operator is not skew-adjoint for q."""


class NotNilpotentError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of blade ``b`` past those of blade ``a``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += _popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


class CliffordAlgebra:
    """``Cl(V, q)`` with blade basis indexed by subsets of the orthogonal frame.

    Basis vectors of ``H = Cl(V, q)`` are ordered by bitmask, so coordinate ``m``
    of an element is the coefficient of the blade with mask ``m``.
    """

    def __init__(self, quad: QuadSpace):
        self.quad = quad
        self.r = quad.dim
        self.d = 1 << self.r
        self.frame, self.squares = lagrange_diagonalize(quad)
        self.frame_inv = self.frame.inverse()
        self._table = self._build_table()

    def _build_table(self):
        d, sq = self.d, self.squares
        table = []
        for a in range(d):
            row = []
            for b in range(d):
                c = Fraction(_reorder_sign(a, b))
                common = a & b
                i = 0
                while common:
                    if common & 1:
                        c *= sq[i]
                    common >>= 1
                    i += 1
                row.append(c)
            table.append(row)
        return table

    def blade_product(self, a: int, b: int) -> tuple[int, Fraction]:
        return a ^ b, self._table[a][b]

    def element(self, coeffs: Mapping[int, Scalar] | None = None) -> "CliffordElement":
        return CliffordElement(self, coeffs or {})

    def scalar(self, c: Scalar) -> "CliffordElement":
        return CliffordElement(self, {0: c})

    def one(self) -> "CliffordElement":
        return self.scalar(1)

    def zero(self) -> "CliffordElement":
        return CliffordElement(self, {})

    def blade(self, mask: int) -> "CliffordElement":
        return CliffordElement(self, {mask: 1})

    def from_vector(self, coords: Sequence[Scalar]) -> "CliffordElement":
        """Element with coordinate vector ``coords`` in the blade basis."""
        if len(coords) != self.d:
            raise ValueError(f"expected {self.d} coordinates")
        return CliffordElement(self, {m: c for m, c in enumerate(coords)})

    def embed_vector(self, v: Sequence[Scalar]) -> "CliffordElement":
        """Image of ``v`` (standard coordinates of V) in ``Cl(V, q)``."""
        if len(v) != self.r:
            raise ValueError(f"vector must have length {self.r}")
        c = self.frame_inv.apply(v)
        return CliffordElement(self, {1 << i: x for i, x in enumerate(c)})

    def vector_part(self, x: "CliffordElement") -> Vector:
        """Standard coordinates of the grade-one part of ``x``."""
        frame_coords = [x.coeffs.get(1 << i, Fraction(0)) for i in range(self.r)]
        return self.frame.apply(frame_coords)

    def __repr__(self):
        return f"CliffordAlgebra(r={self.r}, d={self.d})"


class CliffordElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: CliffordAlgebra, coeffs: Mapping[int, Scalar]):
        self.algebra = algebra
        self.coeffs = {m: normalize(c) for m, c in coeffs.items() if c}

    def _same(self, other: "CliffordElement"):
        if not isinstance(other, CliffordElement):
            raise TypeError(f"expected a Clifford element, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different Clifford algebras")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = self.algebra.scalar(other)
        self._same(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return CliffordElement(self.algebra, {m: c * other for m, c in self.coeffs.items()})
        self._same(other)
        table = self.algebra._table
        out: dict[int, Scalar] = {}
        for a, ca in self.coeffs.items():
            row = table[a]
            for b, cb in other.coeffs.items():
                m = a ^ b
                out[m] = out.get(m, 0) + ca * cb * row[b]
        return CliffordElement(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * other
        return NotImplemented

    def __truediv__(self, c):
        return self * (1 / Fraction(c) if isinstance(c, int) else 1 / c)

    def __pow__(self, k: int):
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.algebra.scalar(other)
        if not isinstance(other, CliffordElement) or other.algebra is not self.algebra:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def scalar_part(self) -> Scalar:
        return self.coeffs.get(0, Fraction(0))

    def grades(self) -> set[int]:
        return {_popcount(m) for m in self.coeffs}

    def is_even(self) -> bool:
        return all(_popcount(m) % 2 == 0 for m in self.coeffs)

    def conj(self) -> "CliffordElement":
        """Complex conjugation of coefficients (the Q-structure is the blade basis)."""
        return CliffordElement(self.algebra, {m: conj(c) for m, c in self.coeffs.items()})

    def to_vector(self) -> Vector:
        return tuple(self.coeffs.get(m, Fraction(0)) for m in range(self.algebra.d))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for m in sorted(self.coeffs):
            name = "*".join(f"f{i + 1}" for i in range(self.algebra.r) if m >> i & 1) or "1"
            terms.append(f"({self.coeffs[m]})*{name}")
        return " + ".join(terms)


def embed_vector(A: CliffordAlgebra, v: Sequence[Scalar]) -> CliffordElement:
    return A.embed_vector(v)


def mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    return a * b


def commutator(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    return a * b - b * a


def parity(a: CliffordElement) -> CliffordElement:
    """The parity automorphism: negate odd-degree blades."""
    return CliffordElement(a.algebra, {m: (-c if _popcount(m) & 1 else c) for m, c in a.coeffs.items()})


def reversal(a: CliffordElement) -> CliffordElement:
    """The anti-involution ``x -> x-bar`` reversing each blade's factors."""
    out = {}
    for m, c in a.coeffs.items():
        k = _popcount(m)
        out[m] = -c if (k * (k - 1) // 2) & 1 else c
    return CliffordElement(a.algebra, out)


def clifford_conjugate(a: CliffordElement) -> CliffordElement:
    """``parity(reversal(a))``: the anti-involution with ``v -> -v`` on V.

    On even elements it agrees with reversal, so the spin norm ``g g-bar`` is the
    same under either.
    """
    return parity(reversal(a))


def trace(a: CliffordElement) -> Scalar:
    """Trace of left multiplication by ``a`` on ``Cl(V, q)``.

    Left multiplication by a non-unit blade moves every blade to a different one,
    so only the unit coefficient contributes: ``trace(a) = d * a_0``.
    """
    return normalize(a.algebra.d * a.scalar_part())


def left_mul_matrix(a: CliffordElement) -> Mat:
    """Matrix of ``x -> a x`` in the blade basis (column ``b`` is ``a * blade_b``)."""
    A = a.algebra
    d = A.d
    rows = [[Fraction(0)] * d for _ in range(d)]
    table = A._table
    for m, c in a.coeffs.items():
        row = table[m]
        for b in range(d):
            rows[m ^ b][b] = rows[m ^ b][b] + c * row[b]
    return Mat(rows, d)


def right_mul_matrix(a: CliffordElement) -> Mat:
    """Matrix of ``x -> x a`` in the blade basis."""
    A = a.algebra
    d = A.d
    rows = [[Fraction(0)] * d for _ in range(d)]
    table = A._table
    for m, c in a.coeffs.items():
        for b in range(d):
            rows[m ^ b][b] = rows[m ^ b][b] + c * table[b][m]
    return Mat(rows, d)


def inverse(a: CliffordElement) -> CliffordElement:
    """Two-sided inverse, by solving ``a x = 1`` through the regular representation."""
    L = left_mul_matrix(a)
    x = L.inverse().column(0)
    return a.algebra.from_vector(x)


def so_to_bivector(Q: QuadSpace, N: Mat) -> dict[tuple[int, int], Fraction]:
    """Coefficients ``{(i, j): c}`` (i < j) of the bivector ``sum c e_i ^ e_j`` mapping to ``N``.

    The forward map is ``v ^ w -> q(w, -) v - q(v, -) w``; it is inverted by
    solving the linear system it defines on the standard basis, and the answer
    is checked by mapping it forward again.
    """
    r = Q.dim
    if N.shape != (r, r):
        raise ValueError(f"operator must be {r}x{r}")
    if not Q.in_so(N):
        raise NotInSoError("operator is not in so(V, q)")
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    if not pairs:
        return {}
    G = Q.gram
    # Unknown (i, j) contributes G[j][k] e_i - G[i][k] e_j to N e_k.
    rows = []
    for m in range(r):
        for k in range(r):
            row = []
            for i, j in pairs:
                coef = Fraction(0)
                if m == i:
                    coef += G[j, k]
                if m == j:
                    coef -= G[i, k]
                row.append(coef)
            row.append(N[m, k])
            rows.append(row)
    R, piv = rref(Mat(rows, len(pairs) + 1))
    if len(pairs) in piv:
        raise ArithmeticError("bivector system is inconsistent")
    if len(piv) != len(pairs):
        raise ArithmeticError("bivector system is singular")
    lam = {pairs[k]: R[k, len(pairs)] for k in range(len(pairs))}
    if bivector_to_so(Q, lam) != N:
        raise ArithmeticError("bivector does not reproduce the operator")
    return {p: c for p, c in lam.items() if c}


def bivector_to_so(Q: QuadSpace, lam: Mapping[tuple[int, int], Scalar]) -> Mat:
    """Forward isomorphism from bivectors to so(V, q)."""
    r = Q.dim
    G = Q.gram
    out = [[Fraction(0)] * r for _ in range(r)]
    for (i, j), c in lam.items():
        for k in range(r):
            out[i][k] += c * G[j, k]
            out[j][k] -= c * G[i, k]
    return Mat(out, r)


def wedge_element(A: CliffordAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> CliffordElement:
    """``eta'(x ^ y) = (xy - yx) / 4``."""
    X, Y = A.embed_vector(x), A.embed_vector(y)
    return (X * Y - Y * X) * Fraction(1, 4)


def eta(A: CliffordAlgebra, N: Mat) -> CliffordElement:
    """The Lie algebra embedding so(V, q) -> Cl(V, q) through bivectors."""
    lam = so_to_bivector(A.quad, N)
    r = A.r
    out = A.zero()
    for (i, j), c in lam.items():
        ei = tuple(Fraction(int(k == i)) for k in range(r))
        ej = tuple(Fraction(int(k == j)) for k in range(r))
        out = out + wedge_element(A, ei, ej) * c
    return out


def nilpotency_index(a: CliffordElement) -> int:
    """Smallest k with ``a**k == 0``; raises if none exists up to ``d + 1``."""
    power = a
    for k in range(1, a.algebra.d + 2):
        if power.is_zero():
            return k
        power = power * a
    raise NotNilpotentError("element is not nilpotent")


def spin_exp(a: CliffordElement, s: Scalar = 1) -> CliffordElement:
    """``exp(s a)`` for nilpotent ``a``, as a finite sum."""
    k = nilpotency_index(a)
    out = a.algebra.one()
    term = a.algebra.one()
    for n in range(1, k):
        term = term * a
        out = out + term * (Fraction(1, factorial(n)) * s ** n)
    return out


def right_ideal(A: CliffordAlgebra, v: Sequence[Scalar]) -> Subspace:
    """The right ideal ``v Cl(V_C, q)`` spanned by ``v * blade`` over all blades."""
    if not any(v):
        raise ValueError("zero vector generates the zero ideal")
    return image(left_mul_matrix(A.embed_vector(v)))


def naive_operator(A: CliffordAlgebra, T: Mat) -> Mat:
    """Matrix of the algebra map ``v_1 ... v_k -> T(v_1) ... T(v_k)`` on ``Cl(V, q)``."""
    images = [A.embed_vector(T.apply(A.frame.column(i))) for i in range(A.r)]
    columns = []
    for m in range(A.d):
        x = A.one()
        for i in range(A.r):
            if m >> i & 1:
                x = x * images[i]
        columns.append(x.to_vector())
    return Mat.from_columns(columns)
