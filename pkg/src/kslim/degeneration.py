"""Invariants of a degeneration read off from its Kuga-Satake limit MHS.

Given a valid K3 limit MHS ``m`` of rank ``r`` (so ``d = 2^r``), the weight-one
structure ``W_1`` of ``ks_lim(m)`` is ``H^1`` of the central fibre, ``w = dim W_0``
is the torus rank, and ``gr_1`` carries the abelian part ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .hodge import HodgeDiamond, K3LimitMHS
from .kuga_satake import AbLimitMHS, FiltrationError, hodge_diamond_ab, ks_lim
from .linalg import Vector, intersect, quotient_basis, subspace_sum


@dataclass
class CentralFibreReport:
    type: str
    diamond: HodgeDiamond
    w: int
    dimB: int
    component_birational_type: str


def expected_h1_diamond(kind: str, r: int) -> HodgeDiamond:
    """Closed-form Hodge numbers of ``H^1`` of the central fibre."""
    if kind == "I":
        return HodgeDiamond({(1, 0): 2 ** (r - 1), (0, 1): 2 ** (r - 1)})
    if kind == "II":
        n = 2 ** (r - 2)
        return HodgeDiamond({(1, 0): n, (0, 1): n, (0, 0): n})
    if kind == "III":
        return HodgeDiamond({(0, 0): 2 ** (r - 1)})
    raise ValueError(f"unknown type {kind!r}")


def birational_label(kind: str, r: int) -> str:
    if kind == "I":
        return f"abelian(dim {2 ** (r - 1)})"
    if kind == "II":
        n = 2 ** (r - 2)
        return f"P^{n}-bundle over abelian({n})"
    if kind == "III":
        return "rational"
    raise ValueError(f"unknown type {kind!r}")


def _h1_diamond(a: AbLimitMHS) -> HodgeDiamond:
    """Diamond of the restriction to ``W_1``: drop the ``(1,1)`` part."""
    full = hodge_diamond_ab(a)
    return HodgeDiamond({pq: full[pq] for pq in ((0, 0), (1, 0), (0, 1))})


def central_fibre_h1(m: K3LimitMHS, a: AbLimitMHS | None = None) -> CentralFibreReport:
    """``H^1`` of the central fibre, checked against the closed forms for its type.

    Raises ``FiltrationError`` if the computed diamond disagrees with the closed
    form, which would mean a bug rather than bad input.
    """
    a = a or ks_lim(m)
    r = m.rank
    diamond = _h1_diamond(a)
    expected = expected_h1_diamond(a.type, r)
    if diamond != expected:
        raise FiltrationError(f"central fibre diamond {diamond.as_dict()} "
                              f"differs from closed form {expected.as_dict()}")
    w = a.W0.dim
    dimB = diamond[1, 0]
    if diamond.total() != a.W1.dim or 2 * dimB + w != a.W1.dim:
        raise FiltrationError("dim H^1 of the central fibre is inconsistent with W_1")
    return CentralFibreReport(a.type, diamond, w, dimB, birational_label(a.type, r))


def component_lower_bound(kind: str, r: int) -> int:
    """Minimum number of central fibre components; 1 for type I."""
    return {"I": 1, "II": 2 ** (r - 2), "III": 2 ** (r - 1)}[kind]


def dual_complex_cohomology(m: K3LimitMHS, k: int, a: AbLimitMHS | None = None) -> int:
    """``dim H^k`` of the dual complex: ``binomial(w, k)`` with ``w = dim W_0``."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    a = a or ks_lim(m)
    return comb(a.W0.dim, k)


def dual_complex_betti(m: K3LimitMHS, a: AbLimitMHS | None = None) -> list[int]:
    """All Betti numbers ``(b_0, ..., b_w)``; a point gives ``[1]``."""
    a = a or ks_lim(m)
    w = a.W0.dim
    return [comb(w, k) for k in range(w + 1)]


@dataclass
class NeronData:
    w: int
    dimB: int
    gr1_basis: list
    gr1_F1_basis: list
    component_birational_type: str

    def as_tuple(self):
        return self.w, self.dimB, self.gr1_basis, self.component_birational_type


def neron_data(m: K3LimitMHS, a: AbLimitMHS | None = None) -> NeronData:
    """Torus rank, abelian dimension and the weight-one piece that determines ``B``.

    ``gr1_basis`` lifts a basis of ``W_1 / W_0`` to echelon vectors of ``W_1``;
    ``gr1_F1_basis`` does the same for ``(F^1 ∩ W_1 + W_0) / W_0``.
    """
    a = a or ks_lim(m)
    w = a.W0.dim
    gr1 = a.W1.dim - w
    if gr1 % 2:
        raise FiltrationError("gr_1 has odd dimension")
    basis: list[Vector] = quotient_basis(a.W1, a.W0)
    lifted_F = subspace_sum(intersect(a.F1, a.W1), a.W0)
    F_basis = quotient_basis(lifted_F, a.W0)
    return NeronData(w, gr1 // 2, basis, F_basis, birational_label(a.type, m.rank))


@dataclass(frozen=True)
class ZetaCoefficient:
    """Coefficient ``N_comp * [B] * (L-1)^w * d^w`` of ``T^d``."""

    d: int
    w: int
    N_comp: int | None = None

    @property
    def multiplier(self) -> int:
        return self.d ** self.w

    def render(self) -> str:
        n = "N" if self.N_comp is None else str(self.N_comp)
        return f"{n}*[B]*(L-1)^{self.w}*{self.multiplier}*T^{self.d}"

    def __str__(self):
        return self.render()


def motivic_zeta(m: K3LimitMHS, terms: int = 5, N_comp: int | None = None,
                 a: AbLimitMHS | None = None) -> list[ZetaCoefficient]:
    """Coefficients of ``T^1 .. T^terms``; ``N_comp`` stays symbolic when ``None``."""
    if terms < 1:
        raise ValueError("terms must be at least 1")
    if N_comp is not None and N_comp < 1:
        raise ValueError("number of components must be positive")
    a = a or ks_lim(m)
    w = a.W0.dim
    return [ZetaCoefficient(d, w, N_comp) for d in range(1, terms + 1)]


def torus_rank_triangle(m: K3LimitMHS, a: AbLimitMHS | None = None) -> bool:
    """``w`` agrees between Neron data, ``ks_lim`` and the dual complex."""
    a = a or ks_lim(m)
    w = a.W0.dim
    betti = dual_complex_betti(m, a)
    return neron_data(m, a).w == w == len(betti) - 1 and motivic_zeta(m, 1, a=a)[0].w == w

