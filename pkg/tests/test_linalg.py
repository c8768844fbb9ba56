from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import gen
import oracles as O
from diracspaces.errors import DimensionMismatch, NotCoisotropic, NotIsotropic
from diracspaces.linalg import (
    Matrix,
    SubspaceKind,
    SymmetricForm,
    annihilator,
    as_scalar,
    classify_subspace,
    coisotropic_reduce,
    complement_basis,
    full_space,
    image,
    intersection,
    is_coisotropic,
    is_form_coisotropic,
    is_isotropic,
    isotropic_reduce,
    kernel,
    orth_complement,
    preimage,
    quotient,
    reduction_in_stages,
    rref,
    span,
    subspace_sum,
    zero_subspace,
)

randoms = st.randoms(use_true_random=False)


def test_as_scalar_refuses_floats():
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar(2) == 2
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_matrix_shape_errors():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) @ Matrix.identity(3)


@given(randoms, st.integers(1, 4), st.integers(1, 5))
def test_rref_matches_sympy(rng, r, c):
    a = gen.matrix(rng, r, c)
    rows, pivots = rref(a.rows, c)
    ref, ref_piv = O.M(a).rref()
    assert tuple(pivots) == ref_piv
    assert O.M(Matrix(rows, c)) == ref[: len(pivots), :] if rows else not ref_piv


@given(randoms, st.integers(1, 4))
def test_det_inverse_match_sympy(rng, n):
    a = gen.matrix(rng, n, n)
    assert a.det() == O.M(a).det()
    if a.is_invertible():
        assert O.M(a.inverse()) == O.M(a).inv()
        assert a @ a.inverse() == Matrix.identity(n)


@given(randoms, st.integers(1, 4), st.integers(1, 5))
def test_rank_nullity(rng, r, c):
    a = gen.matrix(rng, r, c)
    assert a.rank() == O.rank(O.M(a))
    assert kernel(a).dim + a.rank() == c
    assert all(not any(a.apply(v)) for v in kernel(a).basis)


@given(randoms, st.integers(1, 5))
def test_subspace_equality_is_structural(rng, n):
    s = gen.subspace(rng, n)
    a = gen.invertible(rng, s.dim) if s.dim else None
    # a different spanning set of the same space
    other = [tuple(sum(a[i, j] * s.basis[j][k] for j in range(s.dim)) for k in range(n)) for i in range(s.dim)] if a else []
    assert span(other, n) == s
    assert hash(span(other, n)) == hash(s)


@given(randoms, st.integers(1, 5))
def test_intersection_sum_dimensions(rng, n):
    a, b = gen.subspace(rng, n), gen.subspace(rng, n)
    inter = intersection(a, b)
    total = subspace_sum(a, b)
    assert inter.dim + total.dim == a.dim + b.dim
    assert inter <= a and inter <= b and a <= total and b <= total
    ref = O.intersect(O.cols(a.basis, n), O.cols(b.basis, n))
    assert O.rank(ref) == inter.dim


@given(randoms, st.integers(1, 5))
def test_annihilator(rng, n):
    s = gen.subspace(rng, n)
    ann = annihilator(s)
    assert ann.dim == n - s.dim
    assert all(sum(x * y for x, y in zip(a, v)) == 0 for a in ann.basis for v in s.basis)
    assert annihilator(ann) == s


@given(randoms, st.integers(1, 4), st.integers(1, 4))
def test_image_preimage(rng, r, c):
    m = gen.matrix(rng, r, c)
    s = gen.subspace(rng, r)
    pre = preimage(m, s)
    assert image(m, pre) <= s
    assert kernel(m) <= pre
    assert image(m).dim == m.rank()


@given(randoms, st.integers(1, 5))
def test_quotient_maps(rng, n):
    amb = gen.subspace(rng, n)
    ker = span(amb.basis[: len(amb.basis) // 2], n)
    qs = quotient(amb, ker)
    assert qs.dim == amb.dim - ker.dim
    if qs.dim:
        assert qs.projection @ qs.section == Matrix.identity(qs.dim)
    assert all(not any(qs.project(v)) for v in ker.basis)
    assert len(complement_basis(ker, amb)) == qs.dim


@given(randoms, st.integers(1, 5))
def test_orthogonal_complement(rng, n):
    form = gen.nondegenerate_form(rng, n)
    s = gen.subspace(rng, n)
    perp = orth_complement(s, form)
    assert perp.dim == n - s.dim
    assert orth_complement(perp, form) == s
    assert O.same_span(O.cols(perp.basis, n), O.orth(O.cols(s.basis, n), O.M(form.gram))) or perp.dim == 0


def test_classify_in_hyperbolic_plane():
    h = SymmetricForm.hyperbolic(1)
    assert classify_subspace(span([[1, 0]], 2), h) is SubspaceKind.LAGRANGIAN
    assert classify_subspace(full_space(2), h) is SubspaceKind.COISOTROPIC
    assert classify_subspace(zero_subspace(2), h) is SubspaceKind.ISOTROPIC
    assert classify_subspace(span([[1, 1]], 2), h) is SubspaceKind.NONE


def test_degenerate_form_radical():
    f = SymmetricForm.from_gram([[1, 0], [0, 0]])
    assert f.radical() == span([[0, 1]], 2)
    assert not f.is_nondegenerate()
    # perp of the whole space is the radical
    assert orth_complement(full_space(2), f) == f.radical()


def test_form_coisotropic_uses_the_dual():
    beta = SymmetricForm.from_gram([[0, 1], [1, 0]])
    assert is_form_coisotropic(span([[1, 0]], 2), beta)
    assert not is_form_coisotropic(span([[1, 1]], 2), beta)
    assert is_form_coisotropic(span([[1, 0]], 2), SymmetricForm.zero(2))


@given(randoms, st.integers(1, 3))
def test_coisotropic_reduction_is_nondegenerate(rng, k):
    form, a = gen.hyperbolic_setting(rng, k)
    # a fresh coisotropic subspace for this form: the perp of an isotropic line
    v = a.inverse().apply(tuple(int(i == 0) for i in range(2 * k)))
    iso = span([v], 2 * k)
    assert is_isotropic(iso, form)
    red = coisotropic_reduce(orth_complement(iso, form), form)
    assert red.quotient.dim == 2 * k - 2
    assert red.form.is_nondegenerate()
    red2 = isotropic_reduce(iso, form)
    assert red2.quotient.dim == red.quotient.dim


def test_reduce_errors():
    h = SymmetricForm.hyperbolic(1)
    with pytest.raises(NotCoisotropic):
        coisotropic_reduce(span([[1, 1]], 2), h)
    with pytest.raises(NotIsotropic):
        isotropic_reduce(span([[1, 1]], 2), h)


def test_reduction_in_stages_requires_containment():
    h = SymmetricForm.hyperbolic(2)
    # e1 pairs with e3 and e2 with e4
    c = span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 4)  # perp = span{e2}
    d = span([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]], 4)  # perp = span{e1}
    assert is_coisotropic(c, h) and is_coisotropic(d, h)
    assert reduction_in_stages(c, d, h) is not None
    d_bad = span([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4)  # misses e2
    assert is_coisotropic(d_bad, h)
    assert reduction_in_stages(c, d_bad, h) is None


@given(randoms)
def test_staged_pairs_agree(rng):
    c, d, form = gen.staged_pair(rng)
    st_ = reduction_in_stages(c, d, form)
    assert st_ is not None
    assert st_.via_image.form.pullback(st_.identification) == st_.via_intersection.form
