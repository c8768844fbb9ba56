from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import gen
import oracles as O
from diracspaces.diracgroup import (
    CoisotropicDatum,
    anchor_at_identity,
    build_quadratic_triple,
    check_coisotropic,
    compare_fibers,
    equivalent_fiber_via_q,
    hom_fiber,
    hom_fiber_reduced,
    lambda_from_beta,
    pr_g,
    pr_h,
    preimage_coisotropy_check,
    search_coisotropic,
)
from diracspaces.errors import CandidateDimMismatch, FormNotPushedForward, KNotContained, KNotTrivial
from diracspaces.lie import cartan_dirac_sl2, standard_triple, two_dim_nonabelian
from diracspaces.linalg import Matrix, SymmetricForm, full_space, image, is_lagrangian, span, zero_subspace
from diracspaces.report import ValidationReport

STD = standard_triple(two_dim_nonabelian())
CD = cartan_dirac_sl2()


def test_projections_are_complementary():
    for t in (STD, CD):
        stacked = Matrix(pr_g(t).rows + pr_h(t).rows, t.dim)
        basis = Matrix.from_columns(list(t.g.basis) + list(t.h.basis), t.dim)
        assert stacked @ basis == Matrix.identity(t.dim)


def test_lambda_of_standard_triple_vanishes():
    assert lambda_from_beta(STD).lam.gram.is_zero()


def test_lambda_of_cartan_dirac_sl2():
    # independent: coordinates of d in the basis (g | h), first block, conjugating β#
    B = O.cols(CD.g.basis, 6).row_join(O.cols(CD.h.basis, 6))
    coords = B.inv()[:3, :]
    expected = coords * O.M(CD.beta.gram) * coords.T
    got = lambda_from_beta(CD).lam.gram
    assert O.M(got) == expected
    # on the diagonal basis (e,e), (h,h), (f,f): β is ½ of the inverse Killing form
    assert got == Matrix([[0, 0, Fraction(-1, 4)], [0, Fraction(-1, 8), 0], [Fraction(-1, 4), 0, 0]])


def test_quadratic_triple_dimensions():
    for t in (STD, CD):
        qt = build_quadratic_triple(t)
        assert qt.q_dim == 2 * t.g.dim
        assert is_lagrangian(qt.g, qt.metric)
        assert image(qt.f, qt.g) == t.g
        assert anchor_at_identity(qt).shape == (t.h.dim, qt.q_dim)


def test_check_coisotropic_reports_failures():
    # span{y, y*} is not closed: [y, y*] = x*
    c = span([[0, 1, 0, 0], [0, 0, 0, 1]], 4)
    res = check_coisotropic(STD, c)
    assert isinstance(res, ValidationReport)
    assert not res["subalgebra"].ok
    assert res["subalgebra"].witness["bracket"] == (0, 0, 1, 0)


def test_hom_fiber_requires_trivial_k():
    cd = check_coisotropic(STD, STD.g)
    assert isinstance(cd, CoisotropicDatum) and cd.k.is_zero()
    fib = hom_fiber(STD, cd)
    assert fib.p_dim == 2 * STD.g.dim and fib.u_tilde is not None
    with pytest.raises(KNotTrivial):
        hom_fiber(STD, check_coisotropic(STD, full_space(4)))


def test_reduced_fiber_of_the_whole_double():
    # c = d, k = h: l = pr_g(d) = g and p = q
    cd = check_coisotropic(STD, full_space(4))
    assert cd.k == STD.h
    fib = hom_fiber_reduced(STD, cd)
    assert fib.p_dim == 2 * STD.g.dim
    cd6 = check_coisotropic(CD, full_space(6))
    assert hom_fiber_reduced(CD, cd6).p_dim == 6


def test_k_not_contained():
    c = span([[1, 0, 0, 0], [0, 0, 0, 1]], 4)
    bogus = CoisotropicDatum(c, span([[0, 1, 0, 0]], 4))
    with pytest.raises(KNotContained):
        hom_fiber_reduced(STD, bogus)


@pytest.mark.parametrize("t, c", [
    (STD, span([[1, 0, 0, 0], [0, 0, 0, 1]], 4)),
    (STD, span([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4)),
    (CD, span([[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 1, 0]], 6)),
])
def test_fiber_via_q_matches_reduced_fiber(t, c):
    cd = check_coisotropic(t, c)
    qt = build_quadratic_triple(t)
    cmp = compare_fibers(qt, cd)
    red = cmp.reduced
    iso = cmp.isometry
    assert red.module.metric.pullback(iso) == cmp.via_q.module.metric
    assert red.u @ iso == cmp.via_q.u
    via_q = equivalent_fiber_via_q(qt, cd)
    assert via_q.p_dim == red.p_dim


@given(st.randoms(use_true_random=False))
def test_preimage_coisotropy(rng):
    n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
    f = gen.matrix(rng, n2, n1)
    b1 = SymmetricForm(n1, gen.symmetric(rng, n1))
    b2 = b1.pushforward(f)
    w2 = gen.subspace(rng, n2)
    verdict = preimage_coisotropy_check(f, b1, b2, w2)
    assert verdict == O.is_form_coisotropic(O.cols(w2.basis, n2), O.M(b2.gram))


def test_preimage_requires_pushed_forward_form():
    f = Matrix.identity(2)
    with pytest.raises(FormNotPushedForward):
        preimage_coisotropy_check(f, SymmetricForm.zero(2), SymmetricForm.hyperbolic(1), zero_subspace(2))


def test_search_errors_and_order():
    with pytest.raises(CandidateDimMismatch):
        search_coisotropic(STD, zero_subspace(4), [[1, 0, 0]])
    with pytest.raises(KNotContained):
        search_coisotropic(STD, span([[0, 0, 1, 0]], 4), [])
    found = search_coisotropic(STD, span([[1, 0, 0, 0]], 4), [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    assert [d.c.basis for d in found] == sorted(d.c.basis for d in found)
    assert all(d.k == span([[1, 0, 0, 0]], 4) for d in found)
