"""Random exact instances, driven by a ``random.Random`` (hypothesis supplies one via ``st.randoms``)."""
from __future__ import annotations

from fractions import Fraction

from diracspaces.linalg import (
    Matrix,
    Subspace,
    SymmetricForm,
    annihilator,
    image,
    orth_complement,
    span,
    subspace_sum,
)
from diracspaces.lingroupoid import LambdaDatum, MetrizedModule


def rational(rng, bound: int = 3) -> Fraction:
    """A rational in [-bound, bound] with small denominator."""
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(rng.randint(-bound * den, bound * den), den)


def matrix(rng, r: int, c: int, bound: int = 3) -> Matrix:
    return Matrix([[rational(rng, bound) for _ in range(c)] for _ in range(r)], c)


def symmetric(rng, n: int, bound: int = 3) -> Matrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rational(rng, bound)
    return Matrix(rows, n)


def invertible(rng, n: int) -> Matrix:
    while True:
        m = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        if m.is_invertible():
            return m


def nondegenerate_form(rng, n: int) -> SymmetricForm:
    while True:
        g = symmetric(rng, n)
        if g.is_invertible():
            return SymmetricForm(n, g)


def subspace(rng, n: int, k: int | None = None) -> Subspace:
    k = rng.randint(0, n) if k is None else k
    return span([[rational(rng) for _ in range(n)] for _ in range(k)], n)


def datum(rng, n: int | None = None, rank: int | None = None) -> LambdaDatum:
    """λ on an n-dimensional g; ``rank`` forces a low-rank λ when given."""
    n = rng.randint(1, 4) if n is None else n
    if rank is None:
        return LambdaDatum(n, SymmetricForm(n, symmetric(rng, n)))
    a = matrix(rng, n, rank)
    d = Matrix.diag([rng.choice([-1, 1, 2]) for _ in range(rank)]) if rank else Matrix.zeros(0, 0)
    lam = a @ d @ a.T if rank else Matrix.zeros(n, n)
    return LambdaDatum(n, SymmetricForm(n, lam))


def lambda_coisotropic(rng, d: LambdaDatum) -> Subspace:
    """l0 + λ#(ann l0) for random l0; enlarging l0 shrinks ann, so the sum is coisotropic."""
    n = d.g_dim
    l0 = subspace(rng, n, rng.randint(0, n))
    return subspace_sum(l0, image(d.sharp, annihilator(l0)))


def module(rng, n: int, p: int) -> MetrizedModule:
    """Random metric on p and random u; λ# is then forced to be u∘u*."""
    metric = nondegenerate_form(rng, p)
    u = matrix(rng, n, p)
    lam = u @ metric.gram.inverse() @ u.T
    return MetrizedModule(p, metric, u, LambdaDatum(n, SymmetricForm(n, lam)))


def hyperbolic_setting(rng, k: int):
    """A random nondegenerate form of split signature on Q^{2k} and the change
    of coordinates A taking it to the standard pairing."""
    a = invertible(rng, 2 * k)
    return SymmetricForm.hyperbolic(k).pullback(a), a


def staged_pair(rng):
    """(C, D, form) with both coisotropic and C⊥ ⊆ D.

    In the standard pairing with basis e_1..e_k, f_1..f_k: I = span of some
    e's, J = span of e's and f's avoiding I and each other's partners.
    C = I⊥, D = J⊥ and J ⊆ C gives C⊥ = I ⊆ D. Then change coordinates.
    """
    k = rng.randint(1, 3)
    form, a = hyperbolic_setting(rng, k)
    inv = a.inverse()
    idx = list(range(k))
    in_i = {i for i in idx if rng.random() < 0.4}
    rest = [i for i in idx if i not in in_i]
    j_e = {i for i in idx if rng.random() < 0.4}
    j_f = {i for i in rest if i not in j_e and rng.random() < 0.5}
    e = lambda i: tuple(int(r == i) for r in range(2 * k))
    f = lambda i: tuple(int(r == k + i) for r in range(2 * k))
    i_std = span([e(i) for i in in_i], 2 * k)
    j_std = span([e(i) for i in j_e] + [f(i) for i in j_f], 2 * k)
    std = SymmetricForm.hyperbolic(k)
    c = image(inv, orth_complement(i_std, std))
    d = image(inv, orth_complement(j_std, std))
    return c, d, form
