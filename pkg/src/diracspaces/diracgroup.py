"""From a Dirac Manin triple (d, g, h)_β to the quadratic triple (q, g, r)_γ,
β-coisotropic subalgebras c, and the fiber data of the homogeneous spaces
they classify.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import (
    CandidateDimMismatch,
    DimensionMismatch,
    FormNotPushedForward,
    IdentityViolation,
    InvalidTriple,
    KNotContained,
    KNotTrivial,
    NotIsotropic,
)
from .lie import DiracManinTriple, is_subalgebra, normalizes, validate_triple
from .linalg import (
    Matrix,
    QuotientSpace,
    Subspace,
    SymmetricForm,
    annihilator,
    coisotropic_reduce,
    hstack,
    image,
    intersection,
    is_form_coisotropic,
    is_isotropic,
    is_lagrangian,
    isotropic_reduce,
    orth_complement,
    preimage,
    span,
    vec,
)
from .lingroupoid import (
    LambdaDatum,
    LinearGroupoid,
    LinearHomSpace,
    MetrizedLinearGroupoid,
    MetrizedModule,
    from_lambda,
    homspace_from_coisotropic,
    injective_on,
    normal_form_isomorphism,
    units_inclusion,
)
from .report import ValidationReport


def _require_valid(t: DiracManinTriple) -> None:
    rep = validate_triple(t)
    if not rep.ok:
        raise InvalidTriple("; ".join(c.name for c in rep.failures))


def projection_along(onto: Subspace, along: Subspace) -> Matrix:
    """Projection of the ambient space onto ``onto`` with kernel ``along``."""
    basis = hstack([onto.basis_matrix(), along.basis_matrix()])
    if not basis.is_invertible():
        raise ValueError("subspaces are not complementary")
    keep = Matrix.diag([1] * onto.dim + [0] * along.dim)
    return basis @ keep @ basis.inverse()


def pr_g(t: DiracManinTriple) -> Matrix:
    """d -> g along h, in the canonical coordinates of g."""
    return t.g.coordinate_map() @ projection_along(t.g, t.h)


def pr_h(t: DiracManinTriple) -> Matrix:
    """d -> h along g, in the canonical coordinates of h."""
    return t.h.coordinate_map() @ projection_along(t.h, t.g)


def lambda_from_beta(t: DiracManinTriple) -> LambdaDatum:
    """λ = pr_g(β), with pr_g the projection along h."""
    p = pr_g(t)
    return LambdaDatum(t.g.dim, SymmetricForm(t.g.dim, p @ t.beta.gram @ p.T))


def d_beta_groupoid(t: DiracManinTriple) -> MetrizedLinearGroupoid:
    """d × d*_β ⇉ d: the normal-form groupoid with g := d and λ := β."""
    _require_valid(t)
    return from_lambda(LambdaDatum(t.dim, t.beta))


@dataclass(frozen=True)
class QuadraticTriple:
    """(q, g, r)_γ with f: q -> d the descended target and λ in g's coordinates."""

    q_groupoid: MetrizedLinearGroupoid
    f: Matrix
    r: Subspace
    lam: LambdaDatum
    triple: DiracManinTriple
    quotient: QuotientSpace

    @property
    def q_dim(self) -> int:
        return self.q_groupoid.q_dim

    @property
    def metric(self) -> SymmetricForm:
        return self.q_groupoid.metric

    @property
    def gamma(self) -> SymmetricForm:
        """γ ∈ S²q, the dual of the metric."""
        return self.q_groupoid.metric.inverse()

    @property
    def g(self) -> Subspace:
        return self.q_groupoid.units


def build_quadratic_triple(t: DiracManinTriple) -> QuadraticTriple:
    """(q, g, r) = (s⁻¹(g)/s⁻¹(g)⊥, g, f⁻¹(h)) inside d × d*_β."""
    big = d_beta_groupoid(t)
    n, m = t.dim, t.g.dim
    s_top = big.s.submatrix(range(n), range(2 * n))
    t_top = big.t.submatrix(range(n), range(2 * n))
    c = preimage(s_top, t.g)
    red = coisotropic_reduce(c, big.metric)
    qs, metric = red
    if not metric.is_nondegenerate():
        raise IdentityViolation("γ is degenerate")
    f = t_top @ qs.section
    g_q = qs.image_of(image(units_inclusion(n), t.g))
    if image(f, g_q) != t.g or g_q.dim != m:
        raise IdentityViolation("f does not identify the units of q with g")
    r = preimage(f, t.h)
    tq = projection_along(g_q, r)
    sq = projection_along(g_q, orth_complement(r, metric))
    qgpd = MetrizedLinearGroupoid(LinearGroupoid(qs.dim, g_q, sq, tq), metric)
    if not is_lagrangian(g_q, metric):
        raise IdentityViolation("g is not Lagrangian in q")
    gamma_sharp = metric.gram.inverse()
    if f @ gamma_sharp @ f.T != t.beta.gram:
        raise IdentityViolation("f(γ) differs from β")
    tc = t.g.coordinate_map() @ f @ tq
    lam = LambdaDatum(m, SymmetricForm(m, tc @ gamma_sharp @ tc.T))
    if lam != lambda_from_beta(t):
        raise IdentityViolation("λ via q differs from pr_g(β)")
    return QuadraticTriple(qgpd, f, r, lam, t, qs)


def anchor_at_identity(qt: QuadraticTriple) -> Matrix:
    """q -> h, ζ ↦ pr_h f(ζ): the anchor evaluated at the group identity."""
    return pr_h(qt.triple) @ qt.f


# ---------------------------------------------------------------------------
# Coisotropic subalgebras


@dataclass(frozen=True)
class CoisotropicDatum:
    c: Subspace
    k: Subspace


def check_coisotropic(t: DiracManinTriple, c: Subspace) -> CoisotropicDatum | ValidationReport:
    """The datum (c, k = c ∩ h) when c is a k-invariant β-coisotropic subalgebra,
    otherwise the report naming what failed."""
    if c.ambient_dim != t.dim:
        raise DimensionMismatch("c does not live in d")
    rep = ValidationReport()
    d = t.d
    rep.add("subalgebra", is_subalgebra(d, c), _first_bracket_outside(d, c, c, c))
    rep.add("beta-coisotropic", is_form_coisotropic(c, t.beta), _coisotropy_witness(c, t.beta))
    k = intersection(c, t.h)
    rep.add("k-invariant", normalizes(d, k, c), _first_bracket_outside(d, k, c, c))
    for idx, a in enumerate(t.k_generators):
        rep.add(f"generator {idx} preserves c", image(a, c) == c, idx)
    if rep.ok:
        return CoisotropicDatum(c, k)
    return rep


def _first_bracket_outside(d, left: Subspace, right: Subspace, target: Subspace):
    for x in left.basis:
        for y in right.basis:
            z = d.bracket(x, y)
            if not target.contains(z):
                return {"x": x, "y": y, "bracket": z}
    return None


def _coisotropy_witness(s: Subspace, beta: SymmetricForm):
    for a in annihilator(s).basis:
        v = beta.gram.apply(a)
        if not s.contains(v):
            return {"alpha": a, "beta_sharp_alpha": v}
    return None


def preimage_coisotropy_check(f: Matrix, beta1: SymmetricForm, beta2: SymmetricForm, w2: Subspace) -> bool:
    """W₂ is β₂-coisotropic iff f⁻¹(W₂) is β₁-coisotropic, when f(β₁) = β₂.

    Both sides are computed and compared; a disagreement raises.
    """
    if beta1.pushforward(f) != beta2:
        raise FormNotPushedForward("f β₁# fᵀ differs from β₂#")
    downstairs = is_form_coisotropic(w2, beta2)
    upstairs = is_form_coisotropic(preimage(f, w2), beta1)
    if downstairs != upstairs:
        raise IdentityViolation("coisotropy of W₂ and of its preimage disagree")
    return downstairs


# ---------------------------------------------------------------------------
# Fibers of homogeneous spaces


@dataclass(frozen=True)
class HomFiber:
    """Fiber data (p, l, moment). ``kind`` is "unreduced" (moment ũ: p -> d)
    or "reduced" (moment u: p -> g)."""

    module: MetrizedModule
    quotient: QuotientSpace
    l: Subspace
    kind: str

    @property
    def p_dim(self) -> int:
        return self.module.p_dim

    @property
    def form(self) -> SymmetricForm:
        return self.module.metric

    @property
    def u_tilde(self) -> Matrix | None:
        return self.module.u if self.kind == "unreduced" else None

    @property
    def u(self) -> Matrix:
        return self.module.u


def _unreduced(t: DiracManinTriple, c: Subspace) -> LinearHomSpace:
    return homspace_from_coisotropic(LambdaDatum(t.dim, t.beta), c)


def hom_fiber(t: DiracManinTriple, cd: CoisotropicDatum) -> HomFiber:
    """p = s⁻¹(c)/s⁻¹(c)⊥ in d × d*_β, ũ(x, α) = x + β#α, for c ∩ h = 0."""
    if not cd.k.is_zero():
        raise KNotTrivial("c ∩ h is nonzero; use hom_fiber_reduced")
    _require_valid(t)
    hs = _unreduced(t, cd.c)
    fib = HomFiber(hs.module, hs.quotient, hs.l, "unreduced")
    _check_unreduced(fib, cd.c)
    return fib


def _check_unreduced(fib: HomFiber, c: Subspace) -> None:
    m = fib.module
    n = m.datum.g_dim
    if m.u @ m.u_star != m.datum.sharp:
        raise IdentityViolation("ũ∘ũ* differs from β#")
    if not is_lagrangian(fib.l, m.metric) or fib.p_dim != 2 * c.dim:
        raise IdentityViolation("l is not Lagrangian of half dimension")
    embed = fib.quotient.projection @ units_inclusion(n) @ c.basis_matrix()
    if m.u @ embed != c.basis_matrix():
        raise IdentityViolation("ũ restricted to l is not the inclusion of c")


def hom_fiber_reduced(t: DiracManinTriple, cd: CoisotropicDatum) -> HomFiber:
    """p_K = k⊥/k inside the unreduced fiber, l_K = c/k, u = pr_g∘ũ."""
    _require_valid(t)
    c, k = cd.c, cd.k
    if not k <= intersection(c, t.h):
        raise KNotContained("k is not contained in c ∩ h")
    n = t.dim
    hs = _unreduced(t, c)
    qs = hs.quotient
    k_p = qs.image_of(image(units_inclusion(n), k))
    if not is_isotropic(k_p, hs.module.metric):
        raise NotIsotropic("k is not isotropic in the unreduced fiber")
    red = isotropic_reduce(k_p, hs.module.metric)
    p = pr_g(t)
    if not (p @ hs.module.u @ k_p.basis_matrix()).is_zero():
        raise IdentityViolation("pr_g∘ũ does not vanish on k")
    u = p @ hs.module.u @ red.quotient.section
    lam = lambda_from_beta(t)
    module = MetrizedModule(red.quotient.dim, red.form, u, lam)
    l_k = red.quotient.image_of(hs.l)
    fib = HomFiber(module, red.quotient, l_k, "reduced")
    if not is_lagrangian(l_k, red.form):
        raise IdentityViolation("l_K is not Lagrangian")
    if not injective_on(u, l_k) or image(u, l_k) != image(p, c):
        raise IdentityViolation("u on l_K is not injective onto pr_g(c)")
    return fib


@dataclass(frozen=True)
class FiberComparison:
    via_q: LinearHomSpace
    reduced: HomFiber
    isometry: Matrix  # via_q.p -> reduced.p


def compare_fibers(qt: QuadraticTriple, cd: CoisotropicDatum) -> FiberComparison:
    """Build the fiber through q and an explicit isometry onto the reduced fiber."""
    t = qt.triple
    l = image(pr_g(t), cd.c)
    via_q = homspace_from_coisotropic(qt.lam, l)
    reduced = hom_fiber_reduced(t, cd)
    hs = LinearHomSpace(reduced.module, reduced.l)
    normal, iso = normal_form_isomorphism(hs)
    if normal != via_q:
        raise IdentityViolation("normal form of the reduced fiber differs from the fiber via q")
    return FiberComparison(via_q, reduced, iso)


def equivalent_fiber_via_q(qt: QuadraticTriple, cd: CoisotropicDatum) -> HomFiber:
    """s_q⁻¹(l)/s_q⁻¹(l)⊥ for l = pr_g(c), checked isometric to the reduced fiber."""
    cmp = compare_fibers(qt, cd)
    hs = cmp.via_q
    return HomFiber(hs.module, hs.quotient, hs.l, "reduced")


def search_coisotropic(
    t: DiracManinTriple,
    k: Subspace,
    candidates: Sequence[Sequence],
    max_subset_size: int | None = None,
) -> list[CoisotropicDatum]:
    """All spans of k with a subset of the candidates that are valid data with c ∩ h = k."""
    n = t.dim
    cands = [vec(v) for v in candidates]
    if k.ambient_dim != n or any(len(v) != n for v in cands):
        raise CandidateDimMismatch("candidate or k has the wrong length")
    if not k <= t.h:
        raise KNotContained("k is not contained in h")
    top = len(cands) if max_subset_size is None else min(max_subset_size, len(cands))
    seen: set[Subspace] = set()
    found: list[CoisotropicDatum] = []
    for size in range(top + 1):
        for subset in combinations(cands, size):
            c = span(list(k.basis) + list(subset), n)
            if c in seen:
                continue
            seen.add(c)
            res = check_coisotropic(t, c)
            if isinstance(res, CoisotropicDatum) and res.k == k:
                found.append(res)
    found.sort(key=lambda d: d.c.basis)
    return found


def lagrangian_in_d(t: DiracManinTriple, c: Subspace) -> bool:
    """c Lagrangian for the metric dual to β (β nondegenerate)."""
    return is_lagrangian(c, t.beta.inverse())


__all__ = [
    "QuadraticTriple",
    "CoisotropicDatum",
    "HomFiber",
    "FiberComparison",
    "d_beta_groupoid",
    "build_quadratic_triple",
    "check_coisotropic",
    "preimage_coisotropy_check",
    "hom_fiber",
    "hom_fiber_reduced",
    "equivalent_fiber_via_q",
    "compare_fibers",
    "search_coisotropic",
    "lambda_from_beta",
    "pr_g",
    "pr_h",
    "projection_along",
    "anchor_at_identity",
    "lagrangian_in_d",
]
