"""Small named instances used by tests, scripts and the CLI."""
from __future__ import annotations

from .finitemodel import FiniteBundleModule, FiniteGroup, GroupRep, assemble_from_classifying_data
from .linalg import Matrix, block_diag, span
from .lingroupoid import LambdaDatum, from_lambda


def z2_sign_model(K=(0,)) -> FiniteBundleModule:
    """Z/2 acting by -1 on q = g ⊕ g*, g = Q², λ# = diag(1, 0), l = span{e1}."""
    H = FiniteGroup.cyclic(2)
    q = from_lambda(LambdaDatum.from_matrix([[1, 0], [0, 0]]))
    rep = GroupRep(H, 4, (Matrix.identity(4), -Matrix.identity(4)))
    return assemble_from_classifying_data(q, H, rep, K, span([[1, 0]], 2))


def z2_swap_model(K=(0, 1)) -> FiniteBundleModule:
    """Z/2 swapping the two coordinates of g = Q² (and of g*), λ# = [[1,1],[1,1]],
    l = span{e1 + e2}."""
    H = FiniteGroup.cyclic(2)
    swap = Matrix([[0, 1], [1, 0]])
    q = from_lambda(LambdaDatum.from_matrix([[1, 1], [1, 1]]))
    rep = GroupRep(H, 4, (Matrix.identity(4), block_diag(swap, swap)))
    return assemble_from_classifying_data(q, H, rep, K, span([[1, 1]], 2))


def z4_rotation_model(K=(0, 2)) -> FiniteBundleModule:
    """Z/4 rotating the first two coordinates of g = Q³ by a quarter turn,
    λ# = diag(1, 1, 0), l = span{e1, e2}."""
    H = FiniteGroup.cyclic(4)
    r = Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    powers = [Matrix.identity(3)]
    for _ in range(3):
        powers.append(r @ powers[-1])
    q = from_lambda(LambdaDatum.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    rep = GroupRep(H, 6, tuple(block_diag(m, m) for m in powers))
    return assemble_from_classifying_data(q, H, rep, K, span([[1, 0, 0], [0, 1, 0]], 3))
