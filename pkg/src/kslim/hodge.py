"""Limit mixed Hodge structures of K3 type.

A structure is the tuple ``(V, q, F, N)``: a quadratic space, a nilpotent skew
operator ``N`` with ``N^3 = 0``, and a Gaussian-rational vector ``v_lim``
spanning ``F^2``; ``F^1`` is its q-orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .linalg import (Mat, Subspace, apply_to, hermitian_definiteness, image, intersect, kernel, preimage,
                     quotient_basis, subspace_sum, vec_conj)
from .quadratic import QuadSpace, signature
from .scalars import I

TYPES = ("I", "II", "III")


class InvalidStructureError(ValueError):
    """Input fails the axioms; carries the validation report when one exists."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class K3LimitMHS:
    quad: QuadSpace
    N: Mat
    v_lim: tuple

    @property
    def rank(self) -> int:
        return self.quad.dim

    def F(self, p: int) -> Subspace:
        """Step ``F^p`` of the limit Hodge filtration on ``V_C``."""
        r = self.rank
        if p <= 0:
            return Subspace.full(r)
        if p == 1:
            return kernel(Mat([self.quad.gram.apply(self.v_lim)], r))
        if p == 2:
            return Subspace.span([self.v_lim], r)
        return Subspace.zero(r)

    def congruent(self, P: Mat) -> "K3LimitMHS":
        """Same structure in coordinates ``x = P y``: ``(P^T G P, P^-1 N P, P^-1 v)``."""
        Pinv = P.inverse()
        return K3LimitMHS(self.quad.congruent(P), Pinv @ self.N @ P, Pinv.apply(self.v_lim))


@dataclass(frozen=True)
class WeightFiltrationK3:
    """``W_0 <= W_1 <= W_2 <= W_3 <= W_4 = V``."""

    steps: tuple

    def __getitem__(self, k: int) -> Subspace:
        if k < 0:
            return Subspace.zero(self.steps[0].ambient)
        return self.steps[min(k, 4)]

    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.steps)

    def gr_dim(self, k: int) -> int:
        return self[k].dim - self[k - 1].dim


@dataclass
class HodgeDiamond:
    """Hodge numbers ``h^{p,q}``; absent keys are zero."""

    numbers: dict = field(default_factory=dict)

    def __getitem__(self, pq) -> int:
        return self.numbers.get(tuple(pq), 0)

    def total(self) -> int:
        return sum(self.numbers.values())

    def is_symmetric(self) -> bool:
        return all(self[q, p] == h for (p, q), h in self.numbers.items())

    def nonzero(self) -> dict:
        return {pq: h for pq, h in sorted(self.numbers.items()) if h}

    def as_dict(self) -> dict:
        return {f"{p},{q}": h for (p, q), h in sorted(self.nonzero().items())}

    def __eq__(self, other):
        if not isinstance(other, HodgeDiamond):
            return NotImplemented
        return self.nonzero() == other.nonzero()


@dataclass
class AxiomCheck:
    axiom: str
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)
    primitive_signs: dict = field(default_factory=dict)
    polarization_sign: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, axiom, name, passed, detail=""):
        self.checks.append(AxiomCheck(axiom, name, bool(passed), detail))

    def axiom_passed(self, axiom: str) -> bool:
        return all(c.passed for c in self.checks if c.axiom == axiom)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __iter__(self) -> Iterator[AxiomCheck]:
        return iter(self.checks)


def _nilpotent_cube(N: Mat) -> bool:
    return (N @ N @ N).is_zero()


def classify_type(N: Mat) -> str:
    if not _nilpotent_cube(N):
        raise InvalidStructureError("N^3 != 0; no degeneration type")
    if N.is_zero():
        return "I"
    if (N @ N).is_zero():
        return "II"
    return "III"


def weight_filtration_k3(Q: QuadSpace, N: Mat) -> WeightFiltrationK3:
    """Monodromy weight filtration centred at 2, from images and kernels of N and N^2."""
    if not _nilpotent_cube(N):
        raise InvalidStructureError("N^3 != 0")
    if not Q.in_so(N):
        raise InvalidStructureError("N is not in so(V, q)")
    N2 = N @ N
    W0 = image(N2)
    W3 = kernel(N2)
    W1 = apply_to(N, W3)
    W2 = preimage(N, W0)
    return WeightFiltrationK3((W0, W1, W2, W3, Subspace.full(Q.dim)))


def _lifted_F(m: K3LimitMHS, W: WeightFiltrationK3, p: int, k: int, conjugate=False) -> Subspace:
    """Preimage in ``W_k`` of ``F^p gr_k`` (or of its conjugate)."""
    F = m.F(p)
    if conjugate:
        F = F.conj()
    return subspace_sum(intersect(F, W[k]), W[k - 1])


def hodge_piece(m: K3LimitMHS, W: WeightFiltrationK3, p: int, q: int) -> Subspace:
    """Preimage in ``W_{p+q}`` of ``F^p gr ∩ conj(F^q gr)``; contains ``W_{p+q-1}``."""
    k = p + q
    return intersect(_lifted_F(m, W, p, k), _lifted_F(m, W, q, k, conjugate=True))


def _pure_pairs(k: int):
    return [(p, k - p) for p in range(0, 3) if 0 <= k - p <= 2]


def validate_pmhs_k3(m: K3LimitMHS) -> ValidationReport:
    """Check the axioms of a polarized limit MHS of K3 type; never raises on bad data.

    (a) structural invariants, (b) rank of N, (c) purity of each graded piece,
    (d) definiteness of the primitive Hermitian forms ``i^{p-q} q(x, N^i conj y)``
    on every (p, q)-component, with one sign shared by all of them. The sign is
    recorded in ``polarization_sign``.
    """
    rep = ValidationReport()
    Q, N, v = m.quad, m.N, tuple(m.v_lim)
    r = Q.dim

    shapes_ok = N.shape == (r, r) and len(v) == r
    rep.add("a", "shapes", shapes_ok, f"rank {r}")
    if not shapes_ok:
        return rep
    nondeg = not Q.is_degenerate()
    rep.add("a", "q non-degenerate", nondeg)
    if nondeg:
        sig = signature(Q)
        rep.add("a", "signature (2, r-2)", sig == (2, r - 2), f"signature {sig}")
    cube = _nilpotent_cube(N)
    rep.add("a", "N^3 = 0", cube)
    skew = Q.in_so(N)
    rep.add("a", "N in so(V, q)", skew)
    rep.add("a", "F^2 one-dimensional", any(v))
    qvv = Q.norm(v)
    rep.add("a", "q(v, v) = 0", qvv == 0, f"q(v, v) = {qvv}")
    herm = Q.hermitian(v)
    rep.add("a", "q(v, conj v) > 0", herm > 0, f"q(v, conj v) = {herm}")

    if not (nondeg and cube and skew and any(v)):
        rep.add("c", "purity", False, "skipped: structural invariants fail")
        rep.add("d", "primitive polarization", False, "skipped: structural invariants fail")
        return rep

    if not N.is_zero():
        dim_im = N.rank()
        rep.add("b", "dim im N = 2", dim_im == 2, f"dim im N = {dim_im}")
    else:
        rep.add("b", "dim im N = 2", True, "N = 0")

    W = weight_filtration_k3(Q, N)
    nested = all(W[k - 1].ambient == r and W[k].contains_subspace(W[k - 1]) for k in range(1, 5))
    rep.add("c", "W nested", nested, f"dims {W.dims()}")
    for k in range(5):
        g = W.gr_dim(k)
        pieces = [hodge_piece(m, W, p, q) for p, q in _pure_pairs(k)]
        dims = [P.dim - W[k - 1].dim for P in pieces]
        span = W[k - 1]
        for P in pieces:
            span = subspace_sum(span, P)
        ok = sum(dims) == g and span.dim - W[k - 1].dim == g
        rep.add("c", f"gr_{k} pure of weight {k}", ok, f"dim gr = {g}, pieces {dims}")

    for i in range(3):
        k = 2 + i
        Ni = N ** i
        lifted_P = subspace_sum(intersect(W[k], kernel(N ** (i + 1))), W[k - 1])
        for p, q in _pure_pairs(k):
            piece = intersect(lifted_P, hodge_piece(m, W, p, q))
            basis = quotient_basis(piece, W[k - 1])
            if not basis:
                continue
            phase = I ** (p - q)
            H = Mat([[phase * Q.inner(x, Ni.apply(vec_conj(y))) for y in basis] for x in basis],
                    len(basis))
            sign = hermitian_definiteness(H)
            rep.primitive_signs[(k, p, q)] = sign
            rep.add("d", f"P_{k}^({p},{q}) definite", sign != 0, f"dim {len(basis)}, sign {sign}")
    signs = set(rep.primitive_signs.values())
    consistent = len(signs) == 1 and 0 not in signs
    rep.add("d", "one sign for all primitive forms", consistent,
            f"signs {sorted(signs)}")
    if consistent:
        rep.polarization_sign = signs.pop()
        # q(v, conj v) > 0 forces sign -1 on F^2 of a pure structure; the same
        # sign everywhere is what makes exp(zN) v_lim a period for Im z >> 0.
        rep.add("d", "sign matches the F^2 normalization", rep.polarization_sign == -1,
                f"sign {rep.polarization_sign}")
    return rep


def require_valid(m: K3LimitMHS, axioms: str = "abcd") -> ValidationReport:
    rep = validate_pmhs_k3(m)
    bad = [c for c in rep.failures() if c.axiom in axioms]
    if bad:
        names = ", ".join(f"({c.axiom}) {c.name}" for c in bad)
        raise InvalidStructureError(f"invalid K3 limit MHS: {names}", rep)
    return rep


def hodge_diamond_k3(m: K3LimitMHS) -> HodgeDiamond:
    """Hodge numbers of the limit MHS: ``h^{p,q} = dim gr_{p+q}^{p,q}``."""
    require_valid(m, "abc")
    W = weight_filtration_k3(m.quad, m.N)
    numbers = {}
    for k in range(5):
        for p, q in _pure_pairs(k):
            numbers[(p, q)] = hodge_piece(m, W, p, q).dim - W[k - 1].dim
    return HodgeDiamond(numbers)
