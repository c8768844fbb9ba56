"""Lie algebras given by structure constants, and the quadratic data built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .errors import DimensionMismatch, InvalidQuadraticData, JacobiFailure
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    SymmetricForm,
    Vec,
    annihilator,
    direct_sum_form,
    full_space,
    image,
    intersection,
    is_form_coisotropic,
    is_lagrangian,
    span,
    subspace_sum,
    unit_vec,
    vadd,
    vec,
    vscale,
    zero_vec,
)
from .report import ValidationReport


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants: ``structure[i][j]`` is the vector [e_i, e_j]."""

    dim: int
    structure: tuple

    def __post_init__(self):
        n = self.dim
        s = tuple(tuple(vec(self.structure[i][j]) for j in range(n)) for i in range(n))
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise DimensionMismatch("structure tensor is not dim x dim")
        for i in range(n):
            for j in range(n):
                if len(s[i][j]) != n:
                    raise DimensionMismatch(f"[e{i}, e{j}] has wrong length")
                if s[i][j] != tuple(-x for x in s[j][i]):
                    raise ValueError(f"bracket is not antisymmetric at ({i}, {j})")
        object.__setattr__(self, "structure", s)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Sequence]) -> "LieAlgebra":
        """Build from the brackets [e_i, e_j] for i < j; the rest follows by antisymmetry."""
        s = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in brackets.items():
            v = vec(v)
            if i == j:
                if any(v):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            s[i][j] = v
            s[j][i] = tuple(-x for x in v)
        return cls(dim, tuple(tuple(r) for r in s))

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls.from_brackets(dim, {})

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        out = zero_vec(self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out = vadd(out, vscale(a * b, self.structure[i][j]))
        return out

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y]."""
        return Matrix.from_columns([self.bracket(x, unit_vec(self.dim, j)) for j in range(self.dim)], self.dim)

    def ad_basis(self) -> list[Matrix]:
        return [self.ad(unit_vec(self.dim, i)) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return all(not any(v) for row in self.structure for v in row)


def jacobi_witness(a: LieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple violating the Jacobi identity, or None."""
    n = a.dim
    e = [unit_vec(n, i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        x, y, z = e[i], e[j], e[k]
        total = vadd(
            vadd(a.bracket(a.bracket(x, y), z), a.bracket(a.bracket(y, z), x)),
            a.bracket(a.bracket(z, x), y),
        )
        if any(total):
            return (i, j, k)
    return None


def jacobi_check(a: LieAlgebra) -> bool:
    return jacobi_witness(a) is None


def _closure_witness(a: LieAlgebra, left: Subspace, right: Subspace, target: Subspace):
    for x in left.basis:
        for y in right.basis:
            if not target.contains(a.bracket(x, y)):
                return (x, y)
    return None


def is_subalgebra(a: LieAlgebra, s: Subspace) -> bool:
    _check_dim(a, s)
    return _closure_witness(a, s, s, s) is None


def is_ideal(a: LieAlgebra, s: Subspace) -> bool:
    _check_dim(a, s)
    return _closure_witness(a, full_space(a.dim), s, s) is None


def normalizes(a: LieAlgebra, k: Subspace, c: Subspace) -> bool:
    """[k, c] ⊆ c."""
    return _closure_witness(a, k, c, c) is None


def _check_dim(a: LieAlgebra, s: Subspace) -> None:
    if s.ambient_dim != a.dim:
        raise DimensionMismatch(f"subspace of Q^{s.ambient_dim} in a Lie algebra of dim {a.dim}")


def killing_form(a: LieAlgebra) -> SymmetricForm:
    ads = a.ad_basis()
    n = a.dim
    gram = [[_trace(ads[i] @ ads[j]) for j in range(n)] for i in range(n)]
    return SymmetricForm(n, Matrix(gram))


def _trace(m: Matrix) -> object:
    return sum((m[i, i] for i in range(m.nrows)), ZERO)


def metric_invariance_witness(a: LieAlgebra, metric: SymmetricForm):
    """First basis index i with ad_i^T G + G ad_i != 0, i.e. <[x,y],z> + <y,[x,z]> != 0."""
    for i, ad in enumerate(a.ad_basis()):
        if not (ad.T @ metric.gram + metric.gram @ ad).is_zero():
            return i
    return None


def tensor_invariance_witness(a: LieAlgebra, beta: SymmetricForm):
    """First basis index i where beta in S^2 a is not ad_i-invariant: ad B + B ad^T != 0."""
    for i, ad in enumerate(a.ad_basis()):
        if not (ad @ beta.gram + beta.gram @ ad.T).is_zero():
            return i
    return None


def is_automorphism(a: LieAlgebra, m: Matrix) -> bool:
    if m.shape != (a.dim, a.dim) or not m.is_invertible():
        return False
    e = [unit_vec(a.dim, i) for i in range(a.dim)]
    return all(
        m.apply(a.bracket(e[i], e[j])) == a.bracket(m.apply(e[i]), m.apply(e[j]))
        for i in range(a.dim)
        for j in range(i + 1, a.dim)
    )


@dataclass(frozen=True)
class QuadraticLieData:
    """A Lie algebra with an invariant element ``form`` of S^2 of the algebra.

    ``form.gram`` is the matrix of form#: algebra* -> algebra. It may be
    degenerate. When it is invertible its inverse is an invariant metric.
    """

    algebra: LieAlgebra
    form: SymmetricForm

    def __post_init__(self):
        if self.form.ambient_dim != self.algebra.dim:
            raise DimensionMismatch("form and algebra dimensions differ")
        i = tensor_invariance_witness(self.algebra, self.form)
        if i is not None:
            raise InvalidQuadraticData(f"form is not ad-invariant (basis element {i})")

    @classmethod
    def from_metric(cls, algebra: LieAlgebra, metric: SymmetricForm) -> "QuadraticLieData":
        """Use a nondegenerate invariant metric; stores its inverse as the S^2 element."""
        if not metric.is_nondegenerate():
            raise InvalidQuadraticData("metric is degenerate")
        if metric_invariance_witness(algebra, metric) is not None:
            raise InvalidQuadraticData("metric is not ad-invariant")
        return cls(algebra, metric.inverse())

    @property
    def beta(self) -> SymmetricForm:
        return self.form

    def metric(self) -> SymmetricForm:
        """The invariant metric dual to ``form`` (needs nondegeneracy)."""
        if not self.form.is_nondegenerate():
            raise InvalidQuadraticData("form is degenerate; there is no dual metric")
        return self.form.inverse()


@dataclass(frozen=True)
class DiracManinTriple:
    """(d, g, h) with an invariant beta in S^2 d; see ``validate_triple``.

    ``k_generators`` are optional matrices on d standing in for a finite set
    of generators of a group K acting by automorphisms.
    """

    quad: QuadraticLieData
    g: Subspace
    h: Subspace
    k_generators: tuple = field(default=())

    @property
    def d(self) -> LieAlgebra:
        return self.quad.algebra

    @property
    def beta(self) -> SymmetricForm:
        return self.quad.form

    @property
    def dim(self) -> int:
        return self.quad.algebra.dim


def validate_triple(t: DiracManinTriple) -> ValidationReport:
    return validate_triple_data(t.d, t.beta, t.g, t.h, t.k_generators)


def validate_triple_data(
    d: LieAlgebra,
    beta: SymmetricForm,
    g: Subspace,
    h: Subspace,
    k_generators: Sequence[Matrix] = (),
) -> ValidationReport:
    """Every triple invariant, without requiring the data to form a valid triple first."""
    rep = ValidationReport()
    n = d.dim
    if g.ambient_dim != n or h.ambient_dim != n or beta.ambient_dim != n:
        rep.add("dimensions", False, (g.ambient_dim, h.ambient_dim, beta.ambient_dim, n))
        return rep
    rep.add("jacobi", jacobi_check(d), jacobi_witness(d))
    rep.add("g subalgebra", is_subalgebra(d, g), _closure_witness(d, g, g, g))
    rep.add("h subalgebra", is_subalgebra(d, h), _closure_witness(d, h, h, h))
    inter = intersection(g, h)
    rep.add("g ∩ h = 0", inter.is_zero(), inter.basis[:1])
    total = subspace_sum(g, h)
    rep.add("g + h = d", total.is_full(), (total.dim, n))
    rep.add("beta symmetric", beta.gram.is_symmetric())
    w = tensor_invariance_witness(d, beta)
    rep.add("beta ad-invariant", w is None, w)
    rep.add("g beta-coisotropic", is_form_coisotropic(g, beta), _coisotropy_witness(g, beta))
    for idx, m in enumerate(k_generators):
        ok = (
            m.shape == (n, n)
            and is_automorphism(d, m)
            and m @ beta.gram @ m.T == beta.gram
            and image(m, h) == h
        )
        rep.add(f"k generator {idx}", ok, idx)
    return rep


def _coisotropy_witness(s: Subspace, beta: SymmetricForm):
    for a in annihilator(s).basis:
        v = beta.gram.apply(a)
        if not s.contains(v):
            return (a, v)
    return None


# ---------------------------------------------------------------------------
# Constructions


def coadjoint_structure(h: LieAlgebra) -> list[list[Vec]]:
    """ad*_{e_i} eps_j in the dual basis: (ad*_x a)(y) = -a([x, y])."""
    n = h.dim
    return [
        [tuple(-h.structure[i][k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def semidirect_double(h: LieAlgebra) -> QuadraticLieData:
    """h ⋉ h* with h* abelian and the canonical pairing as invariant form."""
    n = h.dim
    coad = coadjoint_structure(h)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            br[(i, j)] = h.structure[i][j] + zero_vec(n)
        for j in range(n):
            br[(i, n + j)] = zero_vec(n) + coad[i][j]
    d = LieAlgebra.from_brackets(2 * n, br)
    return QuadraticLieData(d, SymmetricForm.hyperbolic(n))


def drinfeld_double(h: LieAlgebra, hstar: LieAlgebra) -> QuadraticLieData:
    """h ⋈ h* for hstar given on the dual basis of h.

    The bracket is written down without assuming compatibility; Jacobi is
    checked afterwards and JacobiFailure raised when the pair is not matched.
    """
    n = h.dim
    if hstar.dim != n:
        raise DimensionMismatch("h and hstar must have the same dimension")
    coad_h = coadjoint_structure(h)
    coad_s = coadjoint_structure(hstar)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            br[(i, j)] = h.structure[i][j] + zero_vec(n)
            br[(n + i, n + j)] = zero_vec(n) + hstar.structure[i][j]
        for j in range(n):
            # [e_i, eps_j] = (-ad*_{eps_j} e_i, ad*_{e_i} eps_j)
            br[(i, n + j)] = tuple(-x for x in coad_s[j][i]) + coad_h[i][j]
    d = LieAlgebra.from_brackets(2 * n, br)
    w = jacobi_witness(d)
    if w is not None:
        raise JacobiFailure(f"not a matched pair: Jacobi fails on basis triple {w}")
    return QuadraticLieData(d, SymmetricForm.hyperbolic(n))


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    n, m = a.dim, b.dim
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            br[(i, j)] = a.structure[i][j] + zero_vec(m)
    for i in range(m):
        for j in range(i + 1, m):
            br[(n + i, n + j)] = zero_vec(n) + b.structure[i][j]
    return LieAlgebra.from_brackets(n + m, br)


def cartan_dirac(g: QuadraticLieData) -> DiracManinTriple:
    """(ḡ ⊕ g, g_Δ, 0 ⊕ g): metric (-M) ⊕ M where M is g's invariant metric."""
    if not g.form.is_nondegenerate():
        raise InvalidQuadraticData("Cartan-Dirac construction needs a nondegenerate form")
    n = g.algebra.dim
    d = direct_sum(g.algebra, g.algebra)
    beta = direct_sum_form(-g.form, g.form)
    diag = span([unit_vec(n, i) + unit_vec(n, i) for i in range(n)], 2 * n)
    right = span([zero_vec(n) + unit_vec(n, i) for i in range(n)], 2 * n)
    t = DiracManinTriple(QuadraticLieData(d, beta), diag, right)
    if not is_lagrangian(diag, beta.inverse()):
        raise InvalidQuadraticData("diagonal is not Lagrangian")
    return t


def standard_triple(h: LieAlgebra, k_generators: Sequence[Matrix] = ()) -> DiracManinTriple:
    """(h ⋉ h*, h*, h) with the pairing form."""
    n = h.dim
    quad = semidirect_double(h)
    hs = span([unit_vec(2 * n, i) for i in range(n)], 2 * n)
    dual = span([unit_vec(2 * n, n + i) for i in range(n)], 2 * n)
    return DiracManinTriple(quad, dual, hs, tuple(k_generators))


def sl2() -> LieAlgebra:
    """Basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebra.from_brackets(3, {(0, 2): (0, 1, 0), (1, 0): (2, 0, 0), (1, 2): (0, 0, -2)})


def two_dim_nonabelian() -> LieAlgebra:
    """Basis (x, y) with [x, y] = y."""
    return LieAlgebra.from_brackets(2, {(0, 1): (0, 1)})


def cartan_dirac_sl2() -> DiracManinTriple:
    a = sl2()
    return cartan_dirac(QuadraticLieData.from_metric(a, killing_form(a)))


__all__ = [
    "LieAlgebra",
    "QuadraticLieData",
    "DiracManinTriple",
    "jacobi_check",
    "jacobi_witness",
    "is_subalgebra",
    "is_ideal",
    "normalizes",
    "killing_form",
    "semidirect_double",
    "drinfeld_double",
    "cartan_dirac",
    "standard_triple",
    "validate_triple",
    "validate_triple_data",
    "sl2",
    "two_dim_nonabelian",
    "cartan_dirac_sl2",
]
