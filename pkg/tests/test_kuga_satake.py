import random

import pytest

from kslim.checks import isotropic_wedge
from kslim.clifford import eta, left_mul_matrix, spin_exp
from kslim.forge import example
from kslim.hodge import HodgeDiamond, InvalidStructureError, K3LimitMHS
from kslim.kuga_satake import (_image_bivector, clifford_algebra, eigenspace, hermitian_on, hodge_diamond_ab,
                               i_v_operator, kappa, ks_embedding, ks_lim, orbit_commutativity_check,
                               polarization_form, polarization_matrix, proportionality)
from kslim.linalg import apply_to, basis_vector, exp_nilpotent, hermitian_definiteness
from kslim.scalars import GaussianRational

i = GaussianRational(0, 1)


@pytest.mark.parametrize("name,dims,diamond", [
    ("EX-I.3", (8, 4, 0, 8), {(1, 0): 4, (0, 1): 4}),
    ("EX-II.4", (16, 8, 4, 12), {(0, 0): 4, (1, 0): 4, (0, 1): 4, (1, 1): 4}),
    ("EX-III.3", (8, 4, 4, 4), {(0, 0): 4, (1, 1): 4}),
    ("EX-II.5", (32, 16, 8, 24), {(0, 0): 8, (1, 0): 8, (0, 1): 8, (1, 1): 8}),
    ("EX-III.4", (16, 8, 8, 8), {(0, 0): 8, (1, 1): 8}),
])
def test_ks_lim(name, dims, diamond):
    a = ks_lim(example(name))
    assert (a.d, a.F1.dim, a.W0.dim, a.W1.dim) == dims
    assert a.W1.contains_subspace(a.W0)
    assert hodge_diamond_ab(a) == HodgeDiamond(diamond)


def test_nprime_proportional_to_image_bivector(ex_II4):
    A = clifford_algebra(ex_II4.quad)
    c = proportionality(eta(A, ex_II4.N), _image_bivector(A, ex_II4.N))
    assert c is not None and c != 0


def test_invalid_input_rejected(ex_II4):
    with pytest.raises(InvalidStructureError):
        ks_lim(K3LimitMHS(ex_II4.quad, -ex_II4.N, ex_II4.v_lim))


def test_kappa_rejects_bad_vectors(ex_I3):
    A = clifford_algebra(ex_I3.quad)
    with pytest.raises(ValueError):
        kappa(A, (1, 0, 0))
    with pytest.raises(ValueError):
        kappa(A, (0, 0, 0))


def test_i_v_operator(ex_I3):
    A = clifford_algebra(ex_I3.quad)
    I_v = i_v_operator(A, ex_I3.v_lim)
    assert I_v * I_v == -1
    v = A.embed_vector(ex_I3.v_lim)
    assert I_v * v == v * i
    L = left_mul_matrix(I_v)
    plus, minus = eigenspace(L, i), eigenspace(L, -i)
    assert plus.dim == minus.dim == A.d // 2
    assert plus == kappa(A, ex_I3.v_lim)
    assert minus == plus.conj()


def test_i_v_rescaling(ex_I3):
    A = clifford_algebra(ex_I3.quad)
    v = tuple(3 * x for x in ex_I3.v_lim)
    assert i_v_operator(A, v) == i_v_operator(A, ex_I3.v_lim)
    with pytest.raises(ValueError):
        i_v_operator(A, (1, 0, 0))


def test_ks_embedding_levels(ex_II4):
    a = ks_lim(ex_II4)
    A = a.algebra
    f = ks_embedding(A, ex_II4.v_lim, a)
    assert f.in_F1 and f.in_F0
    for v in ex_II4.F(1).basis:
        assert ks_embedding(A, v, a).in_F0
    outside = basis_vector(4, 0)  # q(e1, v_lim) != 0
    assert not ks_embedding(A, outside, a).in_F0


def test_polarization_EX_I3(ex_I3):
    a = ks_lim(ex_I3)
    A = a.algebra
    e1, e2 = basis_vector(3, 0), basis_vector(3, 1)
    omega, s = polarization_form(A, e1, e2, a.F1)
    assert omega == -omega.T
    assert s in (1, -1)
    assert hermitian_definiteness(hermitian_on(omega.scale(s), a.F1)) == 1
    assert hermitian_definiteness(hermitian_on(omega.scale(-s), a.F1)) == -1
    rng = random.Random(0)
    for _ in range(3):
        g = left_mul_matrix(spin_exp(eta(A, isotropic_wedge(ex_I3.quad, rng))))
        assert g.T @ omega @ g == omega


def test_polarization_reversal_is_indefinite(ex_I3):
    """Reversal instead of Clifford conjugation flips sign between even and odd parts."""
    a = ks_lim(ex_I3)
    A = a.algebra
    e1, e2 = basis_vector(3, 0), basis_vector(3, 1)
    omega = polarization_matrix(A, e1, e2, involution="reversal")
    assert omega == -omega.T
    assert hermitian_definiteness(hermitian_on(omega, a.F1)) == 0
    with pytest.raises(ValueError):
        polarization_form(A, e1, e2, a.F1, involution="reversal")


def test_polarization_precondition(ex_I3):
    a = ks_lim(ex_I3)
    with pytest.raises(ValueError):
        polarization_form(a.algebra, basis_vector(3, 0), basis_vector(3, 2), a.F1)


@pytest.mark.parametrize("name", ["EX-II.4", "EX-III.3"])
def test_orbit_commutativity(name):
    m = example(name)
    rep = orbit_commutativity_check(m)
    assert len(rep.samples) == 2 * clifford_algebra(m.quad).d + 1
    assert rep.passed and rep.all_positive


def test_orbit_imaginary_sample(ex_III3):
    rep = orbit_commutativity_check(ex_III3, [5 * i])
    assert rep.passed and rep.samples[0].positive


def test_orbit_detects_wrong_operator(ex_II4):
    """kappa(exp(zN) v) differs from exp(-z N') kappa(v) for z = 1."""
    A = clifford_algebra(ex_II4.quad)
    vz = exp_nilpotent(ex_II4.N).apply(ex_II4.v_lim)
    wrong = apply_to(left_mul_matrix(spin_exp(eta(A, ex_II4.N), -1)), kappa(A, ex_II4.v_lim))
    assert kappa(A, vz) != wrong
