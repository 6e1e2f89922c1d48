"""The Kuga-Satake construction for limit mixed Hodge structures of K3 type.

``ks_lim`` sends ``(V, q, F, N)`` to ``(H, F^1, N')`` with ``H = Cl(V, q)``,
``F^1 = v_lim Cl(V_C, q)`` and ``N' = eta(N)`` acting by left multiplication;
the weight filtration is ``W_0 = im N'``, ``W_1 = ker N'``, ``W_2 = H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .clifford import (CliffordAlgebra, CliffordElement, clifford_conjugate, eta, left_mul_matrix, reversal,
                       right_ideal, spin_exp, wedge_element)
from .hodge import HodgeDiamond, K3LimitMHS, classify_type, require_valid
from .linalg import (Mat, Subspace, apply_to, exp_nilpotent, hermitian_definiteness, image, intersect,
                     kernel, normalize, subspace_sum)
from .quadratic import QuadSpace
from .scalars import I, Scalar, conj, imag_part, real_part


class FiltrationError(ArithmeticError):
    """The computed filtrations contradict the expected Hodge types."""


@lru_cache(maxsize=32)
def clifford_algebra(quad: QuadSpace) -> CliffordAlgebra:
    return CliffordAlgebra(quad)


@dataclass
class AbLimitMHS:
    algebra: CliffordAlgebra
    F1: Subspace
    Nprime: CliffordElement
    Nmat: Mat
    W0: Subspace
    W1: Subspace
    type: str
    source: K3LimitMHS | None = None

    @property
    def d(self) -> int:
        return self.algebra.d

    def W(self, k: int) -> Subspace:
        if k < 0:
            return Subspace.zero(self.d)
        if k == 0:
            return self.W0
        if k == 1:
            return self.W1
        return Subspace.full(self.d)

    def F(self, p: int) -> Subspace:
        if p <= 0:
            return Subspace.full(self.d)
        if p == 1:
            return self.F1
        return Subspace.zero(self.d)


@dataclass
class EndomorphismClass:
    matrix: Mat
    in_F0: bool | None = None
    in_F1: bool | None = None
    weights: list = field(default_factory=list)

    @property
    def weight(self) -> int | None:
        return min(self.weights) if self.weights else None


def _image_bivector(A: CliffordAlgebra, N: Mat) -> CliffordElement:
    """Bivector of the plane ``im N`` from the first two echelon rows of its basis."""
    basis = image(N).basis
    return wedge_element(A, basis[0], basis[1])


def proportionality(x: CliffordElement, y: CliffordElement) -> Scalar | None:
    """``c`` with ``x = c y`` if one exists, else ``None``."""
    if y.is_zero():
        return None
    m = next(iter(y.coeffs))
    c = normalize(x.coeffs.get(m, 0) / y.coeffs[m])
    return c if x == y * c else None


def ks_lim(m: K3LimitMHS) -> AbLimitMHS:
    """Kuga-Satake limit MHS of a validated K3 limit MHS."""
    require_valid(m)
    A = clifford_algebra(m.quad)
    F1 = right_ideal(A, m.v_lim)
    Np = eta(A, m.N)
    L = left_mul_matrix(Np)
    W0, W1 = image(L), kernel(L)
    kind = classify_type(m.N)
    if kind != "I":
        c = proportionality(Np, _image_bivector(A, m.N))
        if c is None or c == 0:
            raise FiltrationError("eta(N) is not proportional to the bivector of im N")
    if not (L @ L).is_zero() or not W1.contains_subspace(W0):
        raise FiltrationError("N' does not square to zero")
    if F1.dim * 2 != A.d:
        raise FiltrationError(f"F^1 has dimension {F1.dim}, expected {A.d // 2}")
    return AbLimitMHS(A, F1, Np, L, W0, W1, kind, m)


def _piece_dim(a: AbLimitMHS, p: int, k: int, conjugate: bool) -> Subspace:
    F = a.F(p).conj() if conjugate else a.F(p)
    return subspace_sum(intersect(F, a.W(k)), a.W(k - 1))


def hodge_diamond_ab(a: AbLimitMHS) -> HodgeDiamond:
    """Hodge numbers of type ``(0,0) + (1,0) + (0,1) + (1,1)``, checking purity of each graded piece."""
    d = a.d
    w0, w1 = a.W0.dim, a.W1.dim
    if intersect(a.F1, a.W0).dim != 0:
        raise FiltrationError("F^1 meets W_0; gr_0 is not of type (0,0)")
    if subspace_sum(a.F1, a.W1).dim != d or subspace_sum(a.F1.conj(), a.W1).dim != d:
        raise FiltrationError("gr_2 is not of type (1,1)")
    lift10 = _piece_dim(a, 1, 1, False)
    lift01 = _piece_dim(a, 1, 1, True)
    h10, h01 = lift10.dim - w0, lift01.dim - w0
    if h10 + h01 != w1 - w0 or subspace_sum(lift10, lift01).dim != w1:
        raise FiltrationError("gr_1 is not F^1 + conj F^1")
    return HodgeDiamond({(0, 0): w0, (1, 0): h10, (0, 1): h01, (1, 1): d - w1})


def kappa(A: CliffordAlgebra, v: Sequence[Scalar]) -> Subspace:
    """Point of the half-dimensional Grassmannian attached to an isotropic line."""
    if not any(v):
        raise ValueError("zero vector")
    if A.quad.norm(v) != 0:
        raise ValueError("vector is not isotropic")
    return right_ideal(A, v)


def i_v_operator(A: CliffordAlgebra, v: Sequence[Scalar]) -> CliffordElement:
    """Complex structure ``I_v`` of a pure point, with ``I_v^2 = -1`` and ``I_v v = i v``.

    For ``q(v, conj v) = 2`` this is ``Re(v) Im(v)``; other positive values are
    rescaled by ``2 / q(v, conj v)``, which keeps everything rational.
    """
    Q = A.quad
    if Q.norm(v) != 0:
        raise ValueError("q(v, v) must vanish")
    h = Q.hermitian(v)
    if not h > 0:
        raise ValueError("q(v, conj v) must be positive")
    re = tuple(real_part(x) for x in v)
    im = tuple(imag_part(x) for x in v)
    return A.embed_vector(re) * A.embed_vector(im) * (2 / Fraction(h))


def eigenspace(M: Mat, lam: Scalar) -> Subspace:
    return kernel(M - Mat.identity(M.rows).scale(lam))


def _weight_levels(f: Mat, a: AbLimitMHS) -> list[int]:
    levels = []
    for k in range(-2, 3):
        if all(a.W(j + k).contains_subspace(apply_to(f, a.W(j))) for j in range(0, 3)):
            levels.append(k)
    return levels


def ks_embedding(A: CliffordAlgebra, v: Sequence[Scalar], a: AbLimitMHS | None = None) -> EndomorphismClass:
    """Left multiplication ``f_v``; with ``a`` given, its Hodge and weight levels in ``End(H)``."""
    f = left_mul_matrix(A.embed_vector(v))
    if a is None:
        return EndomorphismClass(f)
    F1 = a.F1
    fF1 = apply_to(f, F1)
    in_F0 = F1.contains_subspace(fF1)
    in_F1 = fF1.dim == 0 and F1.contains_subspace(image(f))
    return EndomorphismClass(f, in_F0, in_F1, _weight_levels(f, a))


def polarization_matrix(A: CliffordAlgebra, a1: Sequence[Scalar], a2: Sequence[Scalar],
                        involution: str = "conjugation") -> Mat:
    """Gram matrix of ``omega(x, y) = Tr(x a y-bar)`` with ``a = a1 a2``, in the blade basis.

    ``y-bar`` is Clifford conjugation by default. With plain reversal the form
    is still antisymmetric and Spin-invariant, but right multiplication by a
    positive vector swaps its sign between the even and odd halves of the
    algebra, so it is never definite on a full ``F^1``.
    """
    bar = {"conjugation": clifford_conjugate, "reversal": reversal}[involution]
    a = A.embed_vector(a1) * A.embed_vector(a2)
    d = A.d
    table = A._table
    cols = []
    for y in range(d):
        right = a * bar(A.blade(y))
        # Tr(blade_x * right) = d * (unit coefficient) = d * table[x][x] * right_x
        cols.append([d * table[x][x] * right.coeffs.get(x, 0) for x in range(d)])
    return Mat.from_columns(cols)


def polarization_form(A: CliffordAlgebra, a1: Sequence[Scalar], a2: Sequence[Scalar],
                      F1: Subspace, involution: str = "conjugation") -> tuple[Mat, int]:
    """``(omega, s)`` where ``s * omega`` polarizes the weight-one structure with ``H^{1,0} = F1``.

    ``s`` is found by testing definiteness of ``i omega(h, conj h)`` on ``F1``.
    """
    Q = A.quad
    if not (Q.norm(a1) > 0 and Q.norm(a2) > 0 and Q.inner(a1, a2) == 0):
        raise ValueError("need q(a1,a1) > 0, q(a2,a2) > 0, q(a1,a2) = 0")
    omega = polarization_matrix(A, a1, a2, involution)
    s = hermitian_definiteness(hermitian_on(omega, F1))
    if s == 0:
        raise ValueError("neither omega nor -omega polarizes this structure")
    return omega, s


def hermitian_on(omega: Mat, S: Subspace) -> Mat:
    """Matrix of ``i omega(x, conj y)`` on a basis of ``S``."""
    basis = S.basis
    cbasis = [tuple(conj(x) for x in b) for b in basis]
    Ob = [omega.apply(cb) for cb in cbasis]
    return Mat([[I * sum((x * y for x, y in zip(b, ob) if x and y), Fraction(0)) for ob in Ob]
                for b in basis], len(basis))


@dataclass
class OrbitSample:
    z: Scalar
    equal: bool
    positive: bool
    hermitian_norm: Scalar


@dataclass
class OrbitReport:
    samples: list

    @property
    def passed(self) -> bool:
        return all(s.equal for s in self.samples)

    @property
    def all_positive(self) -> bool:
        return all(s.positive for s in self.samples)


def orbit_commutativity_check(m: K3LimitMHS, samples: Sequence[Scalar] | None = None) -> OrbitReport:
    """Compare ``kappa(exp(zN) v_lim)`` with ``exp(z N') kappa(v_lim)`` at each sample ``z``.

    Both sides are polynomial families of degree below ``2d``, so the default
    ``2d + 1`` integer samples certify the identity for all ``z``.
    """
    require_valid(m)
    A = clifford_algebra(m.quad)
    if samples is None:
        samples = range(2 * A.d + 1)
    Np = eta(A, m.N)
    base = kappa(A, m.v_lim)
    out = []
    for z in samples:
        vz = exp_nilpotent(m.N, z).apply(m.v_lim)
        lhs = kappa(A, vz)
        g = spin_exp(Np, z)
        rhs = apply_to(left_mul_matrix(g), base)
        h = m.quad.hermitian(vz)
        out.append(OrbitSample(z, lhs == rhs, h > 0, h))
    return OrbitReport(out)


def monodromy_pair(m: K3LimitMHS) -> tuple[Mat, CliffordElement]:
    """``(T, T')`` with ``T = exp(N)`` on V and ``T' = exp(eta(N))`` in the spin group."""
    A = clifford_algebra(m.quad)
    return exp_nilpotent(m.N), spin_exp(eta(A, m.N))
