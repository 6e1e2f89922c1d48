"""Exact invariant checks: per-structure checks for reports and the ``verify`` suite.

Every check returns a ``CheckResult``; nothing here raises on a failed
property; exceptions inside a check are caught and reported as failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .clifford import (bivector_to_so, clifford_conjugate, commutator, eta,
                       inverse, left_mul_matrix, naive_operator, reversal, right_ideal, so_to_bivector,
                       spin_exp, trace)
from .degeneration import (birational_label, central_fibre_h1, component_lower_bound, dual_complex_betti,
                           expected_h1_diamond, motivic_zeta, neron_data, torus_rank_triangle)
from .forge import BUILTIN_NAMES, example, random_congruent
from .hodge import K3LimitMHS, hodge_diamond_k3, weight_filtration_k3
from .kuga_satake import (AbLimitMHS, clifford_algebra, eigenspace, hermitian_on, hodge_diamond_ab,
                          i_v_operator, kappa, ks_embedding, ks_lim, monodromy_pair,
                          orbit_commutativity_check, polarization_form)
from .linalg import Mat, apply_to, basis_vector, hermitian_definiteness, kernel
from .quadratic import QuadSpace, cayley_orthogonal, find_isotropic, random_skew
from .scalars import GaussianRational

SCOPES = ("clifford", "ks", "degeneration")


@dataclass
class CheckResult:
    scope: str
    name: str
    passed: bool
    detail: str = ""


def _run(scope: str, name: str, fn: Callable[[], tuple[bool, str] | bool]) -> CheckResult:
    try:
        out = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        return CheckResult(scope, name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        return CheckResult(scope, name, bool(out[0]), out[1])
    return CheckResult(scope, name, bool(out))


def _basis(r: int):
    return [basis_vector(r, k) for k in range(r)]


# -- per-structure checks ---------------------------------------------------

def monodromy_lift_ok(m: K3LimitMHS) -> bool:
    """``T' v T'^-1 = T v`` on a basis of V, and ``(T' - 1)^2 = 0`` on ``Cl``."""
    A = clifford_algebra(m.quad)
    T, Tp = monodromy_pair(m)
    Tp_inv = inverse(Tp)
    for e in _basis(m.rank):
        if Tp * A.embed_vector(e) * Tp_inv != A.embed_vector(T.apply(e)):
            return False
    U = left_mul_matrix(Tp) - Mat.identity(A.d)
    return (U @ U).is_zero()


def ks_naturality_ok(m: K3LimitMHS) -> bool:
    """``f_{Tv} = T' f_v T'^-1`` as matrices, for every basis vector ``v``."""
    A = clifford_algebra(m.quad)
    T, Tp = monodromy_pair(m)
    L, L_inv = left_mul_matrix(Tp), left_mul_matrix(inverse(Tp))
    return all(ks_embedding(A, T.apply(e)).matrix == L @ ks_embedding(A, e).matrix @ L_inv
               for e in _basis(m.rank))


def weight_bracket_ok(m: K3LimitMHS) -> bool:
    """``[N', f_v] = f_{Nv}`` in ``End(H)`` for every basis vector ``v``."""
    A = clifford_algebra(m.quad)
    Lp = left_mul_matrix(eta(A, m.N))
    for e in _basis(m.rank):
        f = ks_embedding(A, e).matrix
        if Lp @ f - f @ Lp != ks_embedding(A, m.N.apply(e)).matrix:
            return False
    return True


def kappa_equivariance_ok(m: K3LimitMHS) -> bool:
    """``kappa(g v g^-1) = g kappa(v)`` for ``g = T'`` and ``v = v_lim``."""
    A = clifford_algebra(m.quad)
    _, g = monodromy_pair(m)
    v = A.embed_vector(m.v_lim)
    moved = A.vector_part(g * v * inverse(g))
    return kappa(A, moved) == apply_to(left_mul_matrix(g), kappa(A, m.v_lim))


def hodge_levels_ok(m: K3LimitMHS, a: AbLimitMHS) -> bool:
    """``f_{v_lim}`` lies in ``F^1 End(H)`` and ``f_v`` in ``F^0 End(H)`` for ``v`` in ``F^1 V``."""
    A = a.algebra
    if not ks_embedding(A, m.v_lim, a).in_F1:
        return False
    return all(ks_embedding(A, v, a).in_F0 for v in m.F(1).basis)


def structure_checks(m: K3LimitMHS, a: AbLimitMHS | None = None, orbit: bool = True) -> list[CheckResult]:
    """Checks reported alongside an analysis of one structure."""
    a = a or ks_lim(m)
    out = [
        _run("ks", "monodromy lift", lambda: monodromy_lift_ok(m)),
        _run("ks", "ks naturality", lambda: ks_naturality_ok(m)),
        _run("ks", "weight bracket", lambda: weight_bracket_ok(m)),
        _run("ks", "kappa equivariance", lambda: kappa_equivariance_ok(m)),
        _run("ks", "Hodge levels of ks", lambda: hodge_levels_ok(m, a)),
    ]
    if orbit:
        def orbit_check():
            rep = orbit_commutativity_check(m)
            return rep.passed, f"{len(rep.samples)} samples, all positive: {rep.all_positive}"
        out.append(_run("ks", "orbit commutativity", orbit_check))
    out.append(_run("degeneration", "central fibre closed form",
                    lambda: (central_fibre_h1(m, a) is not None, a.type)))
    out.append(_run("degeneration", "torus rank triangle", lambda: torus_rank_triangle(m, a)))
    return out


# -- invariants compared under change of coordinates --------------------------

def invariant_summary(m: K3LimitMHS, zeta_terms: int = 3) -> dict:
    """Coordinate-free invariants of ``m``; equal for congruent structures."""
    a = ks_lim(m)
    nd = neron_data(m, a)
    return {
        "k3_weight_dims": weight_filtration_k3(m.quad, m.N).dims(),
        "k3_diamond": hodge_diamond_k3(m).as_dict(),
        "ks_dims": (a.d, a.F1.dim, a.W0.dim, a.W1.dim),
        "ab_diamond": hodge_diamond_ab(a).as_dict(),
        "central_fibre": central_fibre_h1(m, a).diamond.as_dict(),
        "betti": dual_complex_betti(m, a),
        "neron": (nd.w, nd.dimB, nd.component_birational_type),
        "zeta": [str(z) for z in motivic_zeta(m, zeta_terms, a=a)],
    }


# -- global suite -------------------------------------------------------------

def _spaces(rng: random.Random) -> list[QuadSpace]:
    out = [example(n).quad for n in ("EX-I.3", "EX-II.4", "EX-III.3")]
    out.append(random_congruent(example("EX-II.4"), rng).quad)
    return out


def _random_vector(rng: random.Random, r: int, bound: int = 3):
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(r))


def _clifford_checks(rng: random.Random) -> Iterable[CheckResult]:
    spaces = _spaces(rng)

    def defining_relation():
        for Q in spaces:
            A = clifford_algebra(Q)
            for _ in range(50):
                v = _random_vector(rng, Q.dim)
                x = A.embed_vector(v)
                if x * x != Q.norm(v):
                    return False, f"v = {v}"
        return True, f"{50 * len(spaces)} random vectors"

    def lie_map():
        for Q in spaces:
            A = clifford_algebra(Q)
            for _ in range(5):
                N1, N2 = random_skew(Q, rng), random_skew(Q, rng)
                if eta(A, N1 @ N2 - N2 @ N1) != commutator(eta(A, N1), eta(A, N2)):
                    return False
                if bivector_to_so(Q, so_to_bivector(Q, N1)) != N1:
                    return False
        return True

    def ad_identity():
        for Q in spaces:
            A = clifford_algebra(Q)
            for _ in range(5):
                N = random_skew(Q, rng)
                a = eta(A, N)
                for e in _basis(Q.dim):
                    if commutator(a, A.embed_vector(e)) != A.embed_vector(N.apply(e)):
                        return False
        return True

    def spin_membership():
        for name in ("EX-II.4", "EX-III.3"):
            m = example(name)
            A = clifford_algebra(m.quad)
            g = spin_exp(eta(A, m.N), rng.randint(-3, 3))
            if not g.is_even() or g * reversal(g) != 1 or g * clifford_conjugate(g) != 1:
                return False
            g_inv = inverse(g)
            for e in _basis(m.rank):
                y = g * A.embed_vector(e) * g_inv
                if y.grades() - {1}:
                    return False
        return True

    def trace_symmetry():
        A = clifford_algebra(spaces[1])
        for _ in range(20):
            x = A.from_vector([Fraction(rng.randint(-2, 2)) for _ in range(A.d)])
            y = A.from_vector([Fraction(rng.randint(-2, 2)) for _ in range(A.d)])
            if trace(x * y) != trace(y * x):
                return False
        return True

    def ideal_dimension():
        count = 0
        for name in ("EX-I.3", "EX-II.4", "EX-II.5", "EX-III.5"):
            m = example(name)
            A = clifford_algebra(m.quad)
            for _ in range(5):
                g = cayley_orthogonal(m.quad, rng)
                v = g.apply(m.v_lim)
                if right_ideal(A, v).dim != A.d // 2:
                    return False, f"{name}"
                count += 1
        return True, f"{count} isotropic vectors at ranks 3-6"

    yield _run("clifford", "defining relation v^2 = q(v,v)", defining_relation)
    yield _run("clifford", "eta is a Lie algebra map", lie_map)
    yield _run("clifford", "ad identity [eta(N), v] = N v", ad_identity)
    yield _run("clifford", "spin membership of exp(eta(N))", spin_membership)
    yield _run("clifford", "trace(xy) = trace(yx)", trace_symmetry)
    yield _run("clifford", "right ideal dimension d/2", ideal_dimension)


def _polarization_checks(rng: random.Random) -> Iterable[CheckResult]:
    m = example("EX-I.3")
    a = ks_lim(m)
    A = a.algebra
    e1, e2 = basis_vector(3, 0), basis_vector(3, 1)

    def antisymmetric():
        omega, _ = polarization_form(A, e1, e2, a.F1)
        return omega == -omega.T

    def invariant():
        omega, _ = polarization_form(A, e1, e2, a.F1)
        seen = set()
        while len(seen) < 3:
            seen.add(spin_exp(eta(A, isotropic_wedge(m.quad, rng))))
        for g in seen:
            L = left_mul_matrix(g)
            if L.T @ omega @ L != omega:
                return False, "omega(gx, gy) != omega(x, y)"
        return True, f"{len(seen)} distinct spin elements"

    def sign_discovery():
        omega, s = polarization_form(A, e1, e2, a.F1)
        pos = hermitian_definiteness(hermitian_on(omega.scale(s), a.F1)) == 1
        neg = hermitian_definiteness(hermitian_on(omega.scale(-s), a.F1)) == 1
        return pos and not neg, f"sign {s}"

    def complex_structure():
        I_v = i_v_operator(A, m.v_lim)
        if I_v * I_v != -1:
            return False, "I_v^2 != -1"
        plus = eigenspace(left_mul_matrix(I_v), GaussianRational(0, 1))
        return plus == kappa(A, m.v_lim) and plus.dim == A.d // 2, f"dim {plus.dim}"

    yield _run("ks", "polarization antisymmetric", antisymmetric)
    yield _run("ks", "polarization Spin-invariant", invariant)
    yield _run("ks", "exactly one sign of omega polarizes", sign_discovery)
    yield _run("ks", "I_v eigenspace is the right ideal", complex_structure)


def isotropic_wedge(Q: QuadSpace, rng: random.Random) -> Mat:
    """``x -> q(y, x) z - q(z, x) y`` for a random isotropic ``z`` and ``y`` orthogonal to it.

    The operator is skew and its bivector ``z ^ y`` squares to zero in ``Cl``,
    so its exponential is a finite sum.
    """
    z0 = find_isotropic(Q)
    if z0 is None:
        raise ValueError("no short isotropic vector")
    while True:
        z = cayley_orthogonal(Q, rng).apply(z0)
        perp = kernel(Mat([Q.gram.apply(z)], Q.dim)).basis
        cs = [rng.randint(-2, 2) for _ in perp]
        y = tuple(sum((c * b[k] for c, b in zip(cs, perp)), Fraction(0)) for k in range(Q.dim))
        N = Mat.from_columns([tuple(Q.inner(y, e) * z[k] - Q.inner(z, e) * y[k] for k in range(Q.dim))
                              for e in _basis(Q.dim)])
        if not N.is_zero():
            return N


def _ks_checks(rng: random.Random) -> Iterable[CheckResult]:
    for name in ("EX-II.4", "EX-III.3"):
        m = example(name)
        for c in structure_checks(m, orbit=True):
            if c.scope == "ks":
                c.name = f"{c.name} [{name}]"
                yield c
    yield from _polarization_checks(rng)


def _degeneration_checks(rng: random.Random, conjugates: int = 3) -> Iterable[CheckResult]:
    def closed_forms():
        for name in BUILTIN_NAMES:
            m = example(name)
            a = ks_lim(m)
            r = m.rank
            rep = central_fibre_h1(m, a)
            if rep.diamond != expected_h1_diamond(a.type, r):
                return False, name
            w = a.W0.dim
            if a.type != "I" and w != component_lower_bound(a.type, r):
                return False, f"{name}: w = {w}"
            if rep.component_birational_type != birational_label(a.type, r):
                return False, name
            if not torus_rank_triangle(m, a) or 2 * rep.dimB + w != a.W1.dim:
                return False, name
        return True, f"{len(BUILTIN_NAMES)} built-ins"

    def congruence():
        for name in ("EX-I.3", "EX-II.4", "EX-III.3"):
            m = example(name)
            base = invariant_summary(m)
            for _ in range(conjugates):
                if invariant_summary(random_congruent(m, rng)) != base:
                    return False, name
        return True, f"{conjugates} random conjugates per type"

    yield _run("degeneration", "closed forms on built-ins", closed_forms)
    yield _run("degeneration", "congruence invariance", congruence)


def naive_monodromy_check() -> CheckResult:
    """The functorial operator induced by ``T`` on ``Cl`` differs from ``T'`` on EX-II.4.

    It also fails to be unipotent of index two, while ``T'`` is.
    """
    def run():
        m = example("EX-II.4")
        A = clifford_algebra(m.quad)
        T, Tp = monodromy_pair(m)
        naive = naive_operator(A, T)
        one = Mat.identity(A.d)
        differs = naive != left_mul_matrix(Tp)
        U = naive - one
        return differs and not (U @ U).is_zero(), "naive operator differs and (naive - 1)^2 != 0"
    return _run("ks", "naive monodromy differs from T'", run)


def run_suite(scope: str = "all", seed: int = 0, naive_monodromy: bool = False,
              conjugates: int = 3) -> list[CheckResult]:
    """Run the checks in ``scope`` (``all`` or one of ``SCOPES``) with a seeded RNG."""
    if scope != "all" and scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    rng = random.Random(seed)
    out: list[CheckResult] = []
    if scope in ("all", "clifford"):
        out.extend(_clifford_checks(rng))
    if scope in ("all", "ks"):
        out.extend(_ks_checks(rng))
    if naive_monodromy:
        out.append(naive_monodromy_check())
    if scope in ("all", "degeneration"):
        out.extend(_degeneration_checks(rng, conjugates))
    return out
