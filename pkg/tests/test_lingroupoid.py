import random

import pytest
from hypothesis import given, strategies as st

import gen
from diracspaces.errors import IncompatibleJ, InvalidGroupoid, NotComposable, NotLambdaCoisotropic
from diracspaces.linalg import Matrix, SymmetricForm, annihilator, image, is_form_coisotropic, span
from diracspaces.lingroupoid import (
    LambdaDatum,
    LinearGroupoid,
    MetrizedLinearGroupoid,
    canonical_identification,
    check_groupoid_axioms,
    check_metrized,
    dual_groupoid,
    dual_pairing_holds,
    from_lambda,
    general_module_action,
    groupoid_inverse,
    groupoid_multiply,
    homspace_from_coisotropic,
    injective_on,
    metrized_j,
    module_action,
    normal_form_isomorphism,
    to_lambda,
    transitive_on_quotient,
    transport,
    units_inclusion,
)

randoms = st.randoms(use_true_random=False)


@given(randoms)
def test_normal_form_is_a_metrized_groupoid(rng):
    d = gen.datum(rng)
    m = from_lambda(d)
    assert check_groupoid_axioms(m.base).ok
    assert check_metrized(m.base, m.metric).ok
    assert to_lambda(m) == d


@given(randoms)
def test_products_and_inverses(rng):
    d = gen.datum(rng)
    m = from_lambda(d)
    n = d.g_dim
    zeta = tuple(gen.rational(rng) for _ in range(n))
    a1 = tuple(gen.rational(rng) for _ in range(n))
    a2 = tuple(gen.rational(rng) for _ in range(n))
    eta = zeta + a2
    xi = m.t.apply(eta)[:n] + a1
    prod = groupoid_multiply(m.base, xi, eta)
    assert m.s.apply(prod) == m.s.apply(eta)
    assert m.t.apply(prod) == m.t.apply(xi)
    assert m.metric(prod, prod) == m.metric(xi, xi) + m.metric(eta, eta)
    inv = groupoid_inverse(m.base, xi)
    assert groupoid_multiply(m.base, xi, inv) == m.t.apply(xi)


def test_non_composable_pair_is_refused():
    m = from_lambda(LambdaDatum.from_matrix([[1]]))
    with pytest.raises(NotComposable):
        groupoid_multiply(m.base, (0, 1), (1, 0))


def test_invalid_groupoid_data():
    with pytest.raises(InvalidGroupoid):
        LinearGroupoid(2, span([[1, 0]], 2), Matrix([[1, 1], [0, 1]]), Matrix.identity(2))
    base = from_lambda(LambdaDatum.zero(1)).base
    with pytest.raises(InvalidGroupoid):
        MetrizedLinearGroupoid(base, SymmetricForm.from_gram([[1, 0], [0, 1]]))


@given(randoms)
def test_canonical_identification_after_change_of_coordinates(rng):
    m = from_lambda(gen.datum(rng, n=rng.randint(1, 3)))
    skew = transport(m, gen.invertible(rng, m.q_dim))
    phi = canonical_identification(skew)
    assert phi.is_invertible()
    assert skew.metric.pullback(phi) == from_lambda(to_lambda(skew)).metric


@given(randoms)
def test_dual_groupoid(rng):
    m = from_lambda(gen.datum(rng, n=rng.randint(1, 3)))
    dual = dual_groupoid(m.base)
    assert check_groupoid_axioms(dual).ok
    assert dual.units == annihilator(m.units)
    assert dual_groupoid(dual) == m.base
    assert dual_pairing_holds(m.base)


@given(randoms)
def test_module_action_through_general_form(rng):
    n, p = rng.randint(1, 3), rng.randint(1, 4)
    m = gen.module(rng, n, p)
    q = from_lambda(m.datum)
    x = tuple(gen.rational(rng) for _ in range(p))
    alpha = tuple(gen.rational(rng) for _ in range(n))
    xi = m.u.apply(x) + alpha
    direct = module_action(m, xi, x)
    general = general_module_action(metrized_j(m), units_inclusion(n) @ m.u, q.base, xi, x)
    assert direct == general


def test_incompatible_j_is_refused():
    m = gen.module(random.Random(3), 2, 2)
    q = from_lambda(m.datum)
    bad_j = metrized_j(m).scale(2)
    assert bad_j != metrized_j(m)
    with pytest.raises(IncompatibleJ):
        general_module_action(bad_j, units_inclusion(2) @ m.u, q.base, (0,) * 4, (0, 0))


@given(randoms)
def test_homogeneous_space_normal_form(rng):
    d = gen.datum(rng)
    l = gen.lambda_coisotropic(rng, d)
    hs = homspace_from_coisotropic(d, l)
    assert hs.p_dim == 2 * l.dim
    assert image(hs.u, hs.l) == l
    assert transitive_on_quotient(hs.module, hs.l) == injective_on(hs.u, hs.l) is True
    normal, iso = normal_form_isomorphism(hs)
    assert normal.module.metric == hs.module.metric and iso.is_invertible()


def test_not_lambda_coisotropic():
    d = LambdaDatum.from_matrix([[0, 1], [1, 0]])
    l = span([[1, 1]], 2)
    assert not is_form_coisotropic(l, d.lam)
    with pytest.raises(NotLambdaCoisotropic):
        homspace_from_coisotropic(d, l)


def test_zero_lambda_gives_cotangent_fiber():
    # λ = 0: every subspace is coisotropic, p = l ⊕ l* with u the projection onto l
    d = LambdaDatum.zero(3)
    l = span([[1, 0, 0], [0, 1, 1]], 3)
    hs = homspace_from_coisotropic(d, l)
    assert hs.p_dim == 4
    assert (hs.u @ hs.module.u_star).is_zero()
