"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
The lines are also repeated in the pytest terminal summary.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from kslim.checks import invariant_summary, isotropic_wedge
from kslim.clifford import eta, inverse, left_mul_matrix, right_ideal, spin_exp
from kslim.degeneration import component_lower_bound, dual_complex_betti, expected_h1_diamond
from kslim.forge import example, random_congruent
from kslim.hodge import HodgeDiamond, classify_type
from kslim.kuga_satake import (clifford_algebra, eigenspace, hermitian_on, hodge_diamond_ab, i_v_operator,
                               ks_lim, monodromy_pair, orbit_commutativity_check, polarization_form)
from kslim.linalg import Mat, basis_vector, hermitian_definiteness
from kslim.problem import ProblemFile
from kslim.quadratic import cayley_orthogonal, find_isotropic
from kslim.report import analyze
from kslim.scalars import GaussianRational

RESULTS: list[str] = []


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def fresh(name):
    """Example with a cold Clifford cache, so timings include building the algebra."""
    clifford_algebra.cache_clear()
    return example(name)


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_weight_dimensions():
    a2, t2 = timed(lambda: ks_lim(fresh("EX-II.4")))
    a3, t3 = timed(lambda: ks_lim(fresh("EX-III.3")))
    ok = ((a2.d, a2.W0.dim, a2.W1.dim) == (16, 4, 12) and (a3.d, a3.W0.dim, a3.W1.dim) == (8, 4, 4)
          and t2 < 1 and t3 < 1)
    record(1, "weight filtration dimensions", ok,
           f"EX-II.4 W0={a2.W0.dim} W1={a2.W1.dim} in {t2:.2f}s; EX-III.3 W0={a3.W0.dim} W1={a3.W1.dim} in {t3:.2f}s")


def test_criterion_02_type_diamonds():
    expected = {
        "EX-I.3": {(1, 0): 4, (0, 1): 4},
        "EX-II.4": {(0, 0): 4, (1, 0): 4, (0, 1): 4, (1, 1): 4},
        "EX-III.3": {(0, 0): 4, (1, 1): 4},
    }
    ok, notes = True, []
    for name, diamond in expected.items():
        got, t = timed(lambda: hodge_diamond_ab(ks_lim(fresh(name))))
        ok &= got == HodgeDiamond(diamond) and t < 1
        notes.append(f"{name} {t:.2f}s")
    for name in ("EX-I.4", "EX-II.5", "EX-III.4"):
        m = fresh(name)
        d, t = timed(lambda: hodge_diamond_ab(ks_lim(m)))
        h1 = HodgeDiamond({pq: d[pq] for pq in ((0, 0), (1, 0), (0, 1))})
        ok &= h1 == expected_h1_diamond(classify_type(m.N), m.rank) and t < 1
        notes.append(f"{name} {t:.2f}s")
    record(2, "Hodge diamonds by type, incl. padded ranks", ok, ", ".join(notes))


def test_criterion_03_ideal_dimension():
    rng = random.Random(2024)
    plan = [("EX-I.3", 14), ("EX-II.4", 14), ("EX-III.5", 14), ("EX-II.6", 8)]
    count, ok = 0, True
    for name, k in plan:
        m = example(name)
        A = clifford_algebra(m.quad)
        rational = find_isotropic(m.quad)
        for j in range(k):
            g = cayley_orthogonal(m.quad, rng)
            v = g.apply(m.v_lim if j % 2 == 0 else rational)
            ok &= m.quad.norm(v) == 0 and any(v)
            ok &= right_ideal(A, v).dim == A.d // 2
            count += 1
    record(3, "right ideal of an isotropic vector has dimension d/2", ok and count == 50,
           f"{count} vectors, ranks 3-6")


def test_criterion_04_unipotent_lift():
    ok = True
    for name in ("EX-II.4", "EX-III.3"):
        m = example(name)
        A = clifford_algebra(m.quad)
        T, Tp = monodromy_pair(m)
        Tp_inv = inverse(Tp)
        for k in range(m.rank):
            e = basis_vector(m.rank, k)
            ok &= Tp * A.embed_vector(e) * Tp_inv == A.embed_vector(T.apply(e))
        U = left_mul_matrix(Tp) - Mat.identity(A.d)
        ok &= (U @ U).is_zero() and not U.is_zero()
    record(4, "T' = exp(eta(N)) lifts T and (T' - 1)^2 = 0", ok)


def test_criterion_05_orbit_commutativity():
    ok, notes = True, []
    total = 0.0
    for name in ("EX-II.4", "EX-III.3"):
        m = example(name)
        rep, t = timed(lambda: orbit_commutativity_check(m))
        total += t
        d = clifford_algebra(m.quad).d
        ok &= rep.passed and len(rep.samples) == 2 * d + 1
        notes.append(f"{name}: {len(rep.samples)} samples in {t:.2f}s")
    record(5, "orbit commutativity certificate", ok and total < 10, "; ".join(notes))


def test_criterion_06_polarization():
    m = example("EX-I.3")
    a = ks_lim(m)
    A = a.algebra
    omega, s = polarization_form(A, basis_vector(3, 0), basis_vector(3, 1), a.F1)
    ok = omega == -omega.T
    rng = random.Random(6)
    spins = set()
    while len(spins) < 3:
        spins.add(spin_exp(eta(A, isotropic_wedge(m.quad, rng))))
    for g in spins:
        L = left_mul_matrix(g)
        ok &= L.T @ omega @ L == omega
    passing = [sign for sign in (1, -1) if hermitian_definiteness(hermitian_on(omega.scale(sign), a.F1)) == 1]
    ok &= passing == [s]
    record(6, "omega antisymmetric, Spin-invariant, one sign polarizes", ok,
           f"3 spin elements, polarizing sign {s}")


def test_criterion_07_complex_structure():
    m = example("EX-I.3")
    A = clifford_algebra(m.quad)
    I_v = i_v_operator(A, m.v_lim)
    plus = eigenspace(left_mul_matrix(I_v), GaussianRational(0, 1))
    ideal = right_ideal(A, m.v_lim)
    ok = I_v * I_v == -1 and plus == ideal and plus.dim == ideal.dim == 4
    record(7, "+i eigenspace of I_v equals the right ideal", ok, f"dim {plus.dim}")


def test_criterion_08_dual_complex():
    b2, b3 = dual_complex_betti(example("EX-II.4")), dual_complex_betti(example("EX-III.3"))
    point = dual_complex_betti(example("EX-I.3"))
    bounds = component_lower_bound("II", 4), component_lower_bound("III", 3)
    rep = analyze(ProblemFile(example("EX-II.4")), checks=False)
    ok = (b2 == b3 == [1, 4, 6, 4, 1] and point == [1] and bounds == (4, 4)
          and rep["dual_complex"]["component_lower_bound"] == 4)
    record(8, "dual complex Betti numbers and component bounds", ok, f"{b2}, {b3}, bounds {bounds}, type I {point}")


def test_criterion_09_zeta_strings():
    rep = analyze(ProblemFile(example("EX-III.3"), zeta_terms=3), checks=False)
    want = ["N*[B]*(L-1)^4*1*T^1", "N*[B]*(L-1)^4*16*T^2", "N*[B]*(L-1)^4*81*T^3"]
    record(9, "zeta coefficients for EX-III.3", rep["zeta"] == want, ", ".join(rep["zeta"]))


def test_criterion_10_congruence_invariance():
    rng = random.Random(10)
    names = ("EX-I.3", "EX-II.4", "EX-III.3", "EX-II.5")
    base = {n: invariant_summary(example(n)) for n in names}
    ok = True
    for j in range(20):
        name = names[j % len(names)]
        ok &= invariant_summary(random_congruent(example(name), rng)) == base[name]
    record(10, "invariants unchanged under 20 random congruences", ok)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
