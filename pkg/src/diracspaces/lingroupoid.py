"""Linear groupoids q ⇉ g, their metrized normal form q = g ⊕ g*, duals,
modules and homogeneous spaces.

Elements of a normal-form groupoid are vectors (ζ, α) of length 2n with
ζ in g and α in g*.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionMismatch,
    IdentityViolation,
    IncompatibleJ,
    InvalidGroupoid,
    NotComposable,
    NotLambdaCoisotropic,
)
from .linalg import (
    Matrix,
    QuotientSpace,
    Subspace,
    SymmetricForm,
    Vec,
    annihilator,
    coisotropic_reduce,
    full_space,
    hstack,
    image,
    is_form_coisotropic,
    is_lagrangian,
    kernel,
    orth_complement,
    preimage,
    quotient,
    span,
    unit_vec,
    vadd,
    vec,
    vstack,
)
from .report import ValidationReport


@dataclass(frozen=True)
class LinearGroupoid:
    """A vector space q with units g ⊆ q and source/target projections onto g."""

    q_dim: int
    units: Subspace
    s: Matrix
    t: Matrix

    def __post_init__(self):
        n = self.q_dim
        if self.units.ambient_dim != n or self.s.shape != (n, n) or self.t.shape != (n, n):
            raise DimensionMismatch("groupoid data of inconsistent sizes")
        for name, p in (("s", self.s), ("t", self.t)):
            if p @ p != p:
                raise InvalidGroupoid(f"{name} is not idempotent")
            if image(p) != self.units:
                raise InvalidGroupoid(f"image of {name} is not the unit space")

    @property
    def core(self) -> Subspace:
        return kernel(self.s)

    def source(self, xi: Sequence) -> Vec:
        return self.s.apply(vec(xi))

    def target(self, xi: Sequence) -> Vec:
        return self.t.apply(vec(xi))


def groupoid_multiply(gpd: LinearGroupoid, xi: Sequence, eta: Sequence) -> Vec:
    """ξ∘η = η + (1 - s)ξ, defined when s(ξ) = t(η)."""
    xi, eta = vec(xi), vec(eta)
    if gpd.s.apply(xi) != gpd.t.apply(eta):
        raise NotComposable("s(xi) differs from t(eta)")
    return tuple(e + x - sx for e, x, sx in zip(eta, xi, gpd.s.apply(xi)))


def groupoid_inverse(gpd: LinearGroupoid, xi: Sequence) -> Vec:
    xi = vec(xi)
    return tuple(a + b - x for a, b, x in zip(gpd.s.apply(xi), gpd.t.apply(xi), xi))


def composable_pairs(gpd: LinearGroupoid) -> Subspace:
    """{(ξ, η) : s ξ = t η} inside q ⊕ q."""
    return kernel(hstack([gpd.s, -gpd.t]))


def multiplication_map(gpd: LinearGroupoid) -> Matrix:
    """(ξ, η) -> η + (1 - s)ξ as a map q ⊕ q -> q."""
    n = gpd.q_dim
    return hstack([Matrix.identity(n) - gpd.s, Matrix.identity(n)])


def check_groupoid_axioms(gpd: LinearGroupoid) -> ValidationReport:
    """Groupoid laws as identities of matrices restricted to composable tuples."""
    rep = ValidationReport()
    n = gpd.q_dim
    s, t = gpd.s, gpd.t
    one = Matrix.identity(n)
    mult = multiplication_map(gpd)
    pairs = composable_pairs(gpd).basis_matrix()
    prod = mult @ pairs
    rep.add("source of product", s @ prod == hstack([Matrix.zeros(n, n), s]) @ pairs)
    rep.add("target of product", t @ prod == hstack([t, Matrix.zeros(n, n)]) @ pairs)
    # composable triples (ξ, η, ζ): s ξ = t η, s η = t ζ
    z = Matrix.zeros(n, n)
    triples = kernel(vstack([hstack([s, -t, z]), hstack([z, s, -t])])).basis_matrix()
    left = hstack([(one - s) @ (one - s), one - s, one])  # (ξ∘η)∘ζ
    right = hstack([one - s, one - s, one])  # ξ∘(η∘ζ)
    rep.add("associativity", left @ triples == right @ triples)
    rep.add("units are identities", t @ s == s and s @ t == t)
    inv = s + t - one
    rep.add("inverse swaps source and target", s @ inv == t and t @ inv == s)
    rep.add("left inverse", one + (one - s) @ inv == s)
    rep.add("right inverse", inv + (one - s) == t)
    return rep


@dataclass(frozen=True)
class LambdaDatum:
    """λ ∈ S²g stored as a symmetric form on g*; its gram is λ#: g* -> g."""

    g_dim: int
    lam: SymmetricForm

    def __post_init__(self):
        if self.lam.ambient_dim != self.g_dim:
            raise DimensionMismatch("λ lives on the wrong space")

    @classmethod
    def from_matrix(cls, m) -> "LambdaDatum":
        f = SymmetricForm.from_gram(m)
        return cls(f.ambient_dim, f)

    @classmethod
    def zero(cls, n: int) -> "LambdaDatum":
        return cls(n, SymmetricForm.zero(n))

    @property
    def sharp(self) -> Matrix:
        return self.lam.gram


@dataclass(frozen=True)
class MetrizedLinearGroupoid:
    base: LinearGroupoid
    metric: SymmetricForm

    def __post_init__(self):
        rep = check_metrized(self.base, self.metric)
        if not rep.ok:
            raise InvalidGroupoid("; ".join(c.name for c in rep.failures))

    @classmethod
    def _trusted(cls, base: LinearGroupoid, metric: SymmetricForm) -> "MetrizedLinearGroupoid":
        # for constructions that are valid by design (normal forms); skips re-validation
        m = object.__new__(cls)
        object.__setattr__(m, "base", base)
        object.__setattr__(m, "metric", metric)
        return m

    @property
    def q_dim(self) -> int:
        return self.base.q_dim

    @property
    def units(self) -> Subspace:
        return self.base.units

    @property
    def s(self) -> Matrix:
        return self.base.s

    @property
    def t(self) -> Matrix:
        return self.base.t

    @property
    def g_dim(self) -> int:
        return self.base.units.dim


def check_metrized(gpd: LinearGroupoid, metric: SymmetricForm) -> ValidationReport:
    rep = ValidationReport()
    rep.add("metric nondegenerate", metric.is_nondegenerate())
    rep.add("units Lagrangian", is_lagrangian(gpd.units, metric))
    rep.add("ker s = (ker t)⊥", kernel(gpd.s) == orth_complement(kernel(gpd.t), metric))
    rep.add("metric multiplicative", metric_is_multiplicative(gpd, metric))
    return rep


def metric_is_multiplicative(gpd: LinearGroupoid, metric: SymmetricForm) -> bool:
    """⟨ξ1∘η1, ξ2∘η2⟩ = ⟨ξ1,ξ2⟩ + ⟨η1,η2⟩ on composable pairs, as a matrix identity."""
    pairs = composable_pairs(gpd).basis_matrix()
    prod = multiplication_map(gpd) @ pairs
    g = metric.gram
    z = Matrix.zeros(gpd.q_dim, gpd.q_dim)
    return prod.T @ g @ prod == pairs.T @ Matrix.block([[g, z], [z, g]]) @ pairs


def normal_form_units(n: int) -> Subspace:
    return span([unit_vec(2 * n, i) for i in range(n)], 2 * n)


def from_lambda(d: LambdaDatum) -> MetrizedLinearGroupoid:
    """q = g ⊕ g* with s(ζ,α) = ζ, t(ζ,α) = ζ + λ#α and
    ⟨(ζ1,α1),(ζ2,α2)⟩ = ⟨ζ1,α2⟩ + ⟨ζ2,α1⟩ + λ(α1,α2)."""
    n = d.g_dim
    i, z, lam = Matrix.identity(n), Matrix.zeros(n, n), d.sharp
    s = Matrix.block([[i, z], [z, z]])
    t = Matrix.block([[i, lam], [z, z]])
    metric = SymmetricForm(2 * n, Matrix.block([[z, i], [i, lam]]))
    return MetrizedLinearGroupoid._trusted(LinearGroupoid(2 * n, normal_form_units(n), s, t), metric)


def _target_coordinates(m: MetrizedLinearGroupoid) -> Matrix:
    """t followed by coordinates in the canonical basis of the units."""
    return m.units.coordinate_map() @ m.t


def to_lambda(m: MetrizedLinearGroupoid) -> LambdaDatum:
    """λ# = t∘t* on g*, with g written in the canonical basis of the units."""
    tc = _target_coordinates(m)
    lam = tc @ m.metric.gram.inverse() @ tc.T
    return LambdaDatum(m.g_dim, SymmetricForm(m.g_dim, lam))


def canonical_identification(m: MetrizedLinearGroupoid) -> Matrix:
    """Isomorphism from_lambda(to_lambda(m)) -> m: (ζ, α) ↦ Bζ + t*(α).

    B is the canonical basis of the units and t* lands in ker s through the
    metric. The result is checked to be a metrized groupoid isomorphism.
    """
    tc = _target_coordinates(m)
    phi = hstack([m.units.basis_matrix(), m.metric.gram.inverse() @ tc.T])
    normal = from_lambda(to_lambda(m))
    if not is_isomorphism(phi, normal, m):
        raise IdentityViolation("canonical identification is not an isomorphism")
    return phi


def is_isomorphism(phi: Matrix, a: MetrizedLinearGroupoid, b: MetrizedLinearGroupoid) -> bool:
    """phi: a -> b is invertible, isometric, and intertwines source and target."""
    return (
        phi.shape == (b.q_dim, a.q_dim)
        and phi.is_invertible()
        and b.metric.pullback(phi) == a.metric
        and b.s @ phi == phi @ a.s
        and b.t @ phi == phi @ a.t
    )


def transport(m: MetrizedLinearGroupoid, change: Matrix) -> MetrizedLinearGroupoid:
    """The same groupoid written in new coordinates; ``change`` maps new to old."""
    inv = change.inverse()
    base = LinearGroupoid(m.q_dim, image(inv, m.units), inv @ m.s @ change, inv @ m.t @ change)
    return MetrizedLinearGroupoid(base, m.metric.pullback(change))


# ---------------------------------------------------------------------------
# Duals


def dual_groupoid(gpd: LinearGroupoid) -> LinearGroupoid:
    """q* ⇉ ann(g) with s* = (1 - t)ᵀ, t* = (1 - s)ᵀ; product α∘τ = τ + tᵀα."""
    one = Matrix.identity(gpd.q_dim)
    return LinearGroupoid(gpd.q_dim, annihilator(gpd.units), (one - gpd.t).T, (one - gpd.s).T)


def dual_pairing_holds(gpd: LinearGroupoid) -> bool:
    """⟨α∘τ, ξ∘η⟩ = ⟨α,ξ⟩ + ⟨τ,η⟩ for all composable pairs in q* and q."""
    dual = dual_groupoid(gpd)
    x = composable_pairs(gpd).basis_matrix()
    y = composable_pairs(dual).basis_matrix()
    lhs = (multiplication_map(dual) @ y).T @ (multiplication_map(gpd) @ x)
    return lhs == y.T @ x


# ---------------------------------------------------------------------------
# Modules


@dataclass(frozen=True)
class MetrizedModule:
    """(p, metric, u: p -> g) over the normal-form groupoid of ``datum``."""

    p_dim: int
    metric: SymmetricForm
    u: Matrix
    datum: LambdaDatum

    def __post_init__(self):
        if self.metric.ambient_dim != self.p_dim or self.u.shape != (self.datum.g_dim, self.p_dim):
            raise DimensionMismatch("module data of inconsistent sizes")
        if not self.metric.is_nondegenerate():
            raise InvalidGroupoid("module metric is degenerate")
        if self.u @ self.u_star != self.datum.sharp:
            raise InvalidGroupoid("u∘u* differs from λ#")

    @property
    def u_star(self) -> Matrix:
        """u*: g* -> p through the metric on p."""
        return self.metric.gram.inverse() @ self.u.T

    @property
    def groupoid(self) -> MetrizedLinearGroupoid:
        return from_lambda(self.datum)


def _split(m_dim: int, q_elt: Sequence) -> tuple[Vec, Vec]:
    q_elt = vec(q_elt)
    if len(q_elt) != 2 * m_dim:
        raise DimensionMismatch("groupoid element has the wrong length")
    return q_elt[:m_dim], q_elt[m_dim:]


def module_action(m: MetrizedModule, q_elt: Sequence, x: Sequence) -> Vec:
    """(ζ, α)∘x = x + u*(α), defined when ζ = u(x)."""
    zeta, alpha = _split(m.datum.g_dim, q_elt)
    x = vec(x)
    if m.u.apply(x) != zeta:
        raise NotComposable("source of the groupoid element differs from u(x)")
    return vadd(x, m.u_star.apply(alpha))


def module_action_map(m: MetrizedModule) -> Matrix:
    """(ζ, α, x) -> x + u*(α) on q ⊕ p."""
    n = m.datum.g_dim
    return hstack([Matrix.zeros(m.p_dim, n), m.u_star, Matrix.identity(m.p_dim)])


def module_composable(m: MetrizedModule) -> Subspace:
    """{(ξ, x) : s ξ = u x} inside q ⊕ p."""
    n = m.datum.g_dim
    return kernel(hstack([Matrix.identity(n), Matrix.zeros(n, n), -m.u]))


def check_module_laws(m: MetrizedModule) -> ValidationReport:
    rep = ValidationReport()
    n, p = m.datum.g_dim, m.p_dim
    q = m.groupoid
    rep.add("u∘u* = λ#", m.u @ m.u_star == m.datum.sharp)
    pairs = module_composable(m).basis_matrix()
    act = module_action_map(m) @ pairs
    tq = hstack([q.t.submatrix(range(n), range(2 * n)), Matrix.zeros(n, p)])
    rep.add("moment law", m.u @ act == tq @ pairs)
    z = Matrix.zeros(2 * n, p)
    big = Matrix.block([[q.metric.gram, z], [z.T, m.metric.gram]])
    rep.add("metric compatibility", act.T @ m.metric.gram @ act == pairs.T @ big @ pairs)
    # (ξ∘η)∘x = ξ∘(η∘x) on {(ξ, η, x) : s ξ = t η, s η = u x}
    top = hstack([q.s, -q.t, Matrix.zeros(2 * n, p)])
    bottom = hstack([Matrix.zeros(n, 2 * n), q.s.submatrix(range(n), range(2 * n)), -m.u])
    triples = kernel(vstack([top, bottom])).basis_matrix()
    shift = hstack([Matrix.zeros(p, n), m.u_star])
    one_p = Matrix.identity(p)
    lhs = hstack([shift @ (Matrix.identity(2 * n) - q.s), shift, one_p])
    rhs = hstack([shift, shift, one_p])
    rep.add("action associativity", lhs @ triples == rhs @ triples)
    return rep


def general_module_action(j: Matrix, u: Matrix, gpd: LinearGroupoid, xi: Sequence, x: Sequence) -> Vec:
    """ξ∘x = x + j((1 - s)ξ) for a module given by u: p -> q-units and j on ker s.

    ``j`` is a p x q matrix; only its restriction to ker s is used. Units are
    read in q's own coordinates, so u maps into q.
    """
    check_module_pair(j, u, gpd)
    xi, x = vec(xi), vec(x)
    if gpd.s.apply(xi) != u.apply(x):
        raise NotComposable("s(xi) differs from u(x)")
    one = Matrix.identity(gpd.q_dim)
    return vadd(x, (j @ (one - gpd.s)).apply(xi))


def check_module_pair(j: Matrix, u: Matrix, gpd: LinearGroupoid) -> None:
    one = Matrix.identity(gpd.q_dim)
    if u.nrows != gpd.q_dim or j.shape != (u.ncols, gpd.q_dim):
        raise DimensionMismatch("module maps of inconsistent sizes")
    if not all(gpd.units.contains(c) for c in u.columns()):
        raise IncompatibleJ("u does not take values in the unit space")
    if u @ j @ (one - gpd.s) != gpd.t @ (one - gpd.s):
        raise IncompatibleJ("u∘j differs from t on ker s")


def metrized_j(m: MetrizedModule) -> Matrix:
    """j = u* on the g* coordinates, the metrized module as a general module."""
    return hstack([Matrix.zeros(m.p_dim, m.datum.g_dim), m.u_star])


def units_inclusion(n: int) -> Matrix:
    """g -> q = g ⊕ g*."""
    return vstack([Matrix.identity(n), Matrix.zeros(n, n)])


def dual_module_composable(j: Matrix, u: Matrix, gpd: LinearGroupoid) -> Subspace:
    """{(α, η) ∈ q* ⊕ p* : (1 - t)ᵀα = ((j(1 - s))ᵀ η}."""
    one = Matrix.identity(gpd.q_dim)
    return kernel(hstack([(one - gpd.t).T, -(j @ (one - gpd.s)).T]))


def dual_module_action_map(u: Matrix, gpd: LinearGroupoid) -> Matrix:
    """(α, η) -> η + uᵀα as a map q* ⊕ p* -> p* (u maps into q)."""
    return hstack([u.T, Matrix.identity(u.ncols)])


def dual_module_action(j: Matrix, u: Matrix, gpd: LinearGroupoid, alpha: Sequence, eta: Sequence) -> Vec:
    alpha, eta = vec(alpha), vec(eta)
    pair = alpha + eta
    if not dual_module_composable(j, u, gpd).contains(pair):
        raise NotComposable("dual source of alpha differs from the dual moment of eta")
    return dual_module_action_map(u, gpd).apply(pair)


def dual_module_pairing_holds(j: Matrix, u: Matrix, gpd: LinearGroupoid) -> bool:
    """⟨α∘η, ξ∘y⟩ = ⟨α,ξ⟩ + ⟨η,y⟩ on all composable pairs, as a matrix identity."""
    check_module_pair(j, u, gpd)
    one = Matrix.identity(gpd.q_dim)
    x = kernel(hstack([gpd.s, -u])).basis_matrix()
    act = hstack([j @ (one - gpd.s), Matrix.identity(u.ncols)]) @ x
    y = dual_module_composable(j, u, gpd).basis_matrix()
    dact = dual_module_action_map(u, gpd) @ y
    return dact.T @ act == y.T @ x


# ---------------------------------------------------------------------------
# Quotients by a subspace l ⊆ p and transitivity


def quotient_group_action(m: MetrizedModule, l: Subspace, alpha: Sequence, xbar: Sequence) -> Vec:
    """α·x̄ = x̄ + u*(α) mod l, in the canonical coordinates of p/l."""
    qs = quotient(full_space(m.p_dim), l)
    return qs.project(vadd(qs.lift(xbar), m.u_star.apply(vec(alpha))))


def transitive_on_quotient(m: MetrizedModule, l: Subspace) -> bool:
    """g* acts transitively on p/l: the orbit map α ↦ u*(α) mod l is onto."""
    qs = quotient(full_space(m.p_dim), l)
    return (qs.projection @ m.u_star).rank() == qs.dim


def injective_on(u: Matrix, l: Subspace) -> bool:
    return image(u, l).dim == l.dim


# ---------------------------------------------------------------------------
# Homogeneous spaces


@dataclass(frozen=True)
class LinearHomSpace:
    """A metrized module with a Lagrangian l on which u is injective."""

    module: MetrizedModule
    l: Subspace
    quotient: QuotientSpace | None = None

    def __post_init__(self):
        rep = check_homspace(self.module, self.l)
        if not rep.ok:
            raise InvalidGroupoid("; ".join(c.name for c in rep.failures))

    @property
    def p_dim(self) -> int:
        return self.module.p_dim

    @property
    def u(self) -> Matrix:
        return self.module.u


def check_homspace(m: MetrizedModule, l: Subspace) -> ValidationReport:
    rep = ValidationReport()
    rep.add("l Lagrangian", is_lagrangian(l, m.metric))
    rep.add("u injective on l", injective_on(m.u, l))
    rep.add("u(l) λ-coisotropic", is_form_coisotropic(image(m.u, l), m.datum.lam))
    return rep


def homspace_from_coisotropic(d: LambdaDatum, l: Subspace) -> LinearHomSpace:
    """(p, l) = (s⁻¹(l)/s⁻¹(l)⊥, l) with u the descended target."""
    n = d.g_dim
    if l.ambient_dim != n:
        raise DimensionMismatch("l is not a subspace of g")
    if not is_form_coisotropic(l, d.lam):
        raise NotLambdaCoisotropic("λ#(ann l) is not contained in l")
    q = from_lambda(d)
    c = preimage(q.s.submatrix(range(n), range(2 * n)), l)
    red = coisotropic_reduce(c, q.metric)
    u = q.t.submatrix(range(n), range(2 * n)) @ red.quotient.section
    l_p = red.quotient.image_of(image(units_inclusion(n), l))
    return LinearHomSpace(MetrizedModule(red.quotient.dim, red.form, u, d), l_p, red.quotient)


def homspace_to_coisotropic(hs: LinearHomSpace, d: LambdaDatum | None = None) -> Subspace:
    """u(l), a λ-coisotropic subspace of g."""
    d = d or hs.module.datum
    w = image(hs.u, hs.l)
    if not is_form_coisotropic(w, d.lam):
        raise IdentityViolation("u(l) is not λ-coisotropic")
    return w


@dataclass(frozen=True)
class PprimMap:
    """(u(x), α) ↦ x + u*(α) from s⁻¹(u(l)) ⊆ q onto p."""

    matrix: Matrix
    domain: Subspace
    kernel: Subspace


def pprim_map(hs: LinearHomSpace) -> PprimMap:
    """Build the map, then check it is onto p, isometric, with kernel the domain's ⊥."""
    m = hs.module
    n, p = m.datum.g_dim, m.p_dim
    q = from_lambda(m.datum)
    lb = hs.l.basis_matrix()
    ul = m.u @ lb
    # left inverse of u on u(l): sends u(x) back to x for x ∈ l
    w = image(m.u, hs.l)
    coords = w.coordinate_map()
    lift = lb @ (coords @ ul).inverse() @ coords if hs.l.dim else Matrix.zeros(p, n)
    f = hstack([lift, m.u_star])
    domain = preimage(q.s.submatrix(range(n), range(2 * n)), w)
    dom = domain.basis_matrix()
    fd = f @ dom
    ker_in_coords = kernel(fd)
    ker = image(dom, ker_in_coords)
    if image(fd).dim != p:
        raise IdentityViolation("pprim map is not onto p")
    if m.metric.pullback(fd) != q.metric.pullback(dom):
        raise IdentityViolation("pprim map is not an isometry")
    if ker != orth_complement(domain, q.metric):
        raise IdentityViolation("kernel of the pprim map is not the orthogonal of its domain")
    if m.u @ f @ dom != q.t.submatrix(range(n), range(2 * n)) @ dom:
        raise IdentityViolation("pprim map does not intertwine moment and target")
    return PprimMap(f, domain, ker)


def normal_form_isomorphism(hs: LinearHomSpace) -> tuple[LinearHomSpace, Matrix]:
    """The normal form of hs and an explicit isometry from it onto hs.

    The isometry carries the normal-form l to hs.l and intertwines the two
    moment maps.
    """
    w = homspace_to_coisotropic(hs)
    normal = homspace_from_coisotropic(hs.module.datum, w)
    pp = pprim_map(hs)
    iso = pp.matrix @ normal.quotient.section
    m = hs.module
    if not (
        iso.is_invertible()
        and m.metric.pullback(iso) == normal.module.metric
        and image(iso, normal.l) == hs.l
        and m.u @ iso == normal.u
    ):
        raise IdentityViolation("normal form is not isomorphic to the homogeneous space")
    return normal, iso


def is_k_stable(s: Subspace, generators: Sequence[Matrix]) -> bool:
    return all(image(g, s) == s for g in generators)


__all__ = [
    "LinearGroupoid",
    "MetrizedLinearGroupoid",
    "LambdaDatum",
    "MetrizedModule",
    "LinearHomSpace",
    "PprimMap",
    "groupoid_multiply",
    "groupoid_inverse",
    "composable_pairs",
    "multiplication_map",
    "check_groupoid_axioms",
    "check_metrized",
    "metric_is_multiplicative",
    "from_lambda",
    "to_lambda",
    "canonical_identification",
    "is_isomorphism",
    "transport",
    "dual_groupoid",
    "dual_pairing_holds",
    "module_action",
    "check_module_laws",
    "general_module_action",
    "metrized_j",
    "dual_module_action",
    "dual_module_pairing_holds",
    "quotient_group_action",
    "transitive_on_quotient",
    "injective_on",
    "homspace_from_coisotropic",
    "homspace_to_coisotropic",
    "pprim_map",
    "normal_form_isomorphism",
    "is_k_stable",
]
