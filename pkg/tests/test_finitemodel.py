import pytest

from diracspaces.errors import DimensionMismatch, InvalidModel, NotComposable, NotKStable, NotLambdaCoisotropic
from diracspaces.finitemodel import (
    FiniteAlmostDirac,
    FiniteGroup,
    GroupRep,
    assemble_from_classifying_data,
    bundle_action,
    dual_groupoid_pairing_check,
    global_inverse,
    global_source_target,
    global_multiply,
    global_unit,
    homomorphism_witness,
    quotient_action,
    quotient_action_transitivity,
    quotient_group_law,
)
from diracspaces.fixtures import z2_sign_model, z2_swap_model, z4_rotation_model
from diracspaces.linalg import Matrix, block_diag, span
from diracspaces.lingroupoid import LambdaDatum, from_lambda

Z2 = FiniteGroup.cyclic(2)
SWAP = block_diag(Matrix([[0, 1], [1, 0]]), Matrix([[0, 1], [1, 0]]))


@pytest.mark.parametrize("table, message", [
    ([[0, 1], [1]], "square"),
    ([[0, 0], [0, 0]], "identity"),
    ([[0, 1, 2], [1, 1, 1], [2, 1, 0]], "inverse"),
])
def test_bad_tables(table, message):
    with pytest.raises(InvalidModel, match=message):
        FiniteGroup(table)


def test_non_associative_table():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidModel, match="associative"):
        FiniteGroup(t)


def test_cyclic_group_structure():
    g = FiniteGroup.cyclic(4)
    assert g.identity == 0 and g.inv(1) == 3
    assert g.is_subgroup([0, 2]) and not g.is_subgroup([0, 1])
    assert g.coset_reps([0, 2]) == {0: 0, 1: 1, 2: 0, 3: 1}


def test_representations():
    assert homomorphism_witness(Z2, [Matrix.identity(1), Matrix([[2]])]) == (1, 1)
    assert homomorphism_witness(Z2, [Matrix([[2]]), Matrix([[1]])]) == (0,)
    with pytest.raises(InvalidModel):
        GroupRep(Z2, 1, ([[1]], [[2]]))
    with pytest.raises(DimensionMismatch):
        GroupRep(Z2, 2, ([[1]], [[1]]))
    assert GroupRep(Z2, 4, (Matrix.identity(4), SWAP))(1) == SWAP


def test_bullet_must_preserve_the_metric():
    q = from_lambda(LambdaDatum.zero(1))
    with pytest.raises(InvalidModel):
        FiniteAlmostDirac(q, Z2, GroupRep(Z2, 2, (Matrix.identity(2), Matrix([[1, 0], [1, -1]]))))


def test_assembly_errors():
    q = from_lambda(LambdaDatum.zero(2))
    rep = GroupRep(Z2, 4, (Matrix.identity(4), SWAP))
    with pytest.raises(NotKStable):
        assemble_from_classifying_data(q, Z2, rep, (0, 1), span([[1, 0]], 2))
    # K = {e} does not see the swap
    assert assemble_from_classifying_data(q, Z2, rep, (0,), span([[1, 0]], 2)).fiber.p_dim == 2
    q1 = from_lambda(LambdaDatum.from_matrix([[1, 1], [1, 1]]))
    with pytest.raises(NotLambdaCoisotropic):
        assemble_from_classifying_data(q1, Z2, rep, (0,), span([[1, 0]], 2))


@pytest.mark.parametrize("build", [z2_sign_model, z2_swap_model, z4_rotation_model])
def test_global_laws_pointwise(build):
    bm = build()
    fa = bm.parent
    n = fa.g_dim
    for h in fa.H.elements:
        xi = tuple(range(1, 2 * n + 1))
        a = (h, xi)
        inv = global_inverse(fa, a)
        src, tgt = global_source_target(fa, h, xi)
        assert global_multiply(fa, a, inv) == global_unit(fa, tgt)
        assert global_multiply(fa, global_unit(fa, tgt), a) == a
        assert global_multiply(fa, a, global_unit(fa, src)) == a
        # A/E is a group with identity (e, 0)
        e = (fa.H.identity, (0,) * n)
        x = (h, tuple(range(n)))
        assert quotient_group_law(fa, e, x) == x
    assert dual_groupoid_pairing_check(fa)


def test_bundle_action_needs_matching_moment():
    bm = z2_sign_model()
    n = bm.parent.g_dim
    with pytest.raises(NotComposable):
        bundle_action(bm, (0, (1,) * (2 * n)), (0, (0,) * bm.fiber.p_dim))


@pytest.mark.parametrize("build", [z2_sign_model, z2_swap_model, z4_rotation_model])
def test_transitivity_on_named_models(build):
    assert quotient_action_transitivity(build())


def test_assembled_models_are_always_transitive():
    # the normal-form fiber has u injective on l by construction
    q = from_lambda(LambdaDatum.zero(1))
    bm = assemble_from_classifying_data(q, Z2, GroupRep.trivial(Z2, 2), (0, 1), span([[1]], 1))
    assert bm.fiber.p_dim == 2
    assert quotient_action_transitivity(bm)


def test_quotient_action_lands_on_cosets():
    bm = z4_rotation_model()
    dim = bm.fiber.p_dim - bm.l.dim
    c, _ = quotient_action(bm, (3, (0, 0, 0)), (2, (0,) * dim))
    assert c == bm.coset_reps[1]
