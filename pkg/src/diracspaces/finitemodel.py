"""Global objects over a finite group H.

A = H × q is a groupoid over g, E = H × g is its vacant subgroupoid and
P = H ×_K p is a module. Because H is finite every law can be verified on
every tuple of group elements; for fixed group elements each law is a
linear identity checked on a basis.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import (
    DimensionMismatch,
    IdentityViolation,
    InvalidModel,
    NotComposable,
    NotKStable,
    NotLambdaCoisotropic,
)
from .linalg import (
    Matrix,
    Subspace,
    Vec,
    full_space,
    hstack,
    image,
    is_form_coisotropic,
    is_lagrangian,
    kernel,
    quotient,
    unit_vec,
    vadd,
    vec,
    vscale,
    vsub,
    dot,
    zero_vec,
)
from .lingroupoid import (
    LambdaDatum,
    LinearGroupoid,
    MetrizedLinearGroupoid,
    MetrizedModule,
    dual_module_pairing_holds,
    dual_pairing_holds,
    from_lambda,
    homspace_from_coisotropic,
    injective_on,
    normal_form_units,
    to_lambda,
    units_inclusion,
)
from .report import ValidationReport


@dataclass(frozen=True)
class FiniteGroup:
    """Elements 0..order-1 with multiplication table ``table[a][b] = ab``."""

    table: tuple

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if any(len(row) != n for row in t) or any(not 0 <= x < n for row in t for x in row):
            raise InvalidModel("multiplication table is not square over 0..n-1")
        ids = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
        if len(ids) != 1:
            raise InvalidModel("no unique identity element")
        e = ids[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if t[a][b] == e and t[b][a] == e]
            if not bs:
                raise InvalidModel(f"element {a} has no inverse")
            inv.append(bs[0])
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidModel(f"table is not associative at {(a, b, c)}")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverses", tuple(inv))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def is_subgroup(self, k: Sequence[int]) -> bool:
        ks = set(k)
        return self.identity in ks and all(self.mul(a, b) in ks for a in ks for b in ks)

    def coset_reps(self, k: Sequence[int]) -> dict[int, int]:
        """Left cosets hK: each element mapped to the smallest element of its coset."""
        reps = {}
        for h in self.elements:
            reps[h] = min(self.mul(h, x) for x in k)
        return reps


@dataclass(frozen=True)
class GroupRep:
    group: FiniteGroup
    dim: int
    matrices: tuple

    def __post_init__(self):
        ms = tuple(m if isinstance(m, Matrix) else Matrix(m) for m in self.matrices)
        object.__setattr__(self, "matrices", ms)
        if len(ms) != self.group.order or any(m.shape != (self.dim, self.dim) for m in ms):
            raise DimensionMismatch("one dim x dim matrix per group element is required")
        w = homomorphism_witness(self.group, ms)
        if w is not None:
            raise InvalidModel(f"not a representation: rho(ab) != rho(a)rho(b) at {w}")

    def __call__(self, h: int) -> Matrix:
        return self.matrices[h]

    @classmethod
    def trivial(cls, group: FiniteGroup, dim: int) -> "GroupRep":
        return cls(group, dim, tuple(Matrix.identity(dim) for _ in group.elements))


def homomorphism_witness(group: FiniteGroup, ms: Sequence[Matrix], elements: Sequence[int] | None = None):
    els = list(group.elements) if elements is None else list(elements)
    if ms[group.identity] != Matrix.identity(ms[group.identity].nrows):
        return (group.identity,)
    for a in els:
        for b in els:
            if ms[group.mul(a, b)] != ms[a] @ ms[b]:
                return (a, b)
    return None


def _blocks(m: Matrix, n: int) -> tuple[Matrix, Matrix]:
    """The g-block and g*-block of a block-diagonal map on g ⊕ g*."""
    return m.submatrix(range(n), range(n)), m.submatrix(range(n, 2 * n), range(n, 2 * n))


@dataclass(frozen=True)
class FiniteAlmostDirac:
    """A normal-form metrized groupoid q with H acting by metrized groupoid automorphisms."""

    q: MetrizedLinearGroupoid
    H: FiniteGroup
    bullet: GroupRep

    def __post_init__(self):
        rep = check_almost_dirac(self.q, self.bullet)
        if not rep.ok:
            raise InvalidModel("; ".join(c.name for c in rep.failures))
        blocks = [_blocks(m, self.q.g_dim) for m in self.bullet.matrices]
        object.__setattr__(self, "_blocks", blocks)

    @property
    def g_dim(self) -> int:
        return self.q.g_dim

    @property
    def datum(self) -> LambdaDatum:
        return to_lambda(self.q)

    def on_g(self, h: int) -> Matrix:
        return self._blocks[h][0]

    def on_dual(self, h: int) -> Matrix:
        return self._blocks[h][1]


def check_almost_dirac(q: MetrizedLinearGroupoid, bullet: GroupRep) -> ValidationReport:
    rep = ValidationReport()
    n = q.g_dim
    normal = q.units == normal_form_units(n) and q.s == from_lambda(LambdaDatum.zero(n)).s
    rep.add("groupoid in normal form", normal)
    if not normal:
        return rep
    rep.add("rep dimension", bullet.dim == q.q_dim, bullet.dim)
    if bullet.dim != q.q_dim:
        return rep
    for h in bullet.group.elements:
        r = bullet(h)
        rep.add(f"h={h} preserves metric", q.metric.pullback(r) == q.metric, h)
        rep.add(f"h={h} preserves units", image(r, q.units) == q.units, h)
        rep.add(f"h={h} intertwines s", q.s @ r == r @ q.s, h)
        rep.add(f"h={h} intertwines t", q.t @ r == r @ q.t, h)
    return rep


def global_source_target(fa: FiniteAlmostDirac, h: int, xi: Sequence) -> tuple[Vec, Vec]:
    """s(h, ξ) = s(ξ) and t(h, ξ) = h•t(ξ), both in g coordinates."""
    n = fa.g_dim
    xi = vec(xi)
    src = fa.q.s.apply(xi)[:n]
    tgt = fa.on_g(h).apply(fa.q.t.apply(xi)[:n])
    return src, tgt


def global_multiply(fa: FiniteAlmostDirac, a: tuple[int, Sequence], b: tuple[int, Sequence]) -> tuple[int, Vec]:
    """(h1, ξ)∘(h2, η) = (h1h2, η + h2⁻¹•(1 - s)ξ)."""
    (h1, xi), (h2, eta) = (a[0], vec(a[1])), (b[0], vec(b[1]))
    if global_source_target(fa, h1, xi)[0] != global_source_target(fa, h2, eta)[1]:
        raise NotComposable("s(h1, ξ) differs from t(h2, η)")
    shifted = vsub(xi, fa.q.s.apply(xi))
    return fa.H.mul(h1, h2), vadd(eta, fa.bullet(fa.H.inv(h2)).apply(shifted))


def global_inverse(fa: FiniteAlmostDirac, a: tuple[int, Sequence]) -> tuple[int, Vec]:
    h, xi = a[0], vec(a[1])
    s, t = fa.q.s.apply(xi), fa.q.t.apply(xi)
    return fa.H.inv(h), fa.bullet(h).apply(tuple(x + y - z for x, y, z in zip(s, t, xi)))


def global_unit(fa: FiniteAlmostDirac, zeta: Sequence) -> tuple[int, Vec]:
    zeta = vec(zeta)
    return fa.H.identity, zeta + (0,) * fa.g_dim


def _composable_basis(fa: FiniteAlmostDirac, h2: int) -> list[tuple[Vec, Vec]]:
    """Basis of {(ξ, η) : s ξ = h2•t η} (the condition does not involve h1)."""
    n = fa.g_dim
    s_top = fa.q.s.submatrix(range(n), range(2 * n))
    t_top = fa.on_g(h2) @ fa.q.t.submatrix(range(n), range(2 * n))
    sp = kernel(hstack([s_top, -t_top]))
    m = 2 * n
    return [(b[:m], b[m:]) for b in sp.basis]


def _triple_basis(fa: FiniteAlmostDirac, h2: int, h3: int) -> list[tuple[Vec, Vec, Vec]]:
    n = fa.g_dim
    m = 2 * n
    s_top = fa.q.s.submatrix(range(n), range(m))
    t_top = fa.q.t.submatrix(range(n), range(m))
    z = Matrix.zeros(n, m)
    rows = Matrix.block([
        [s_top, -(fa.on_g(h2) @ t_top), z],
        [z, s_top, -(fa.on_g(h3) @ t_top)],
    ])
    return [(b[:m], b[m:2 * m], b[2 * m:]) for b in kernel(rows).basis]


def verify_global_groupoid(fa: FiniteAlmostDirac) -> ValidationReport:
    """Groupoid laws of A = H × q over every tuple of group elements."""
    rep = ValidationReport()
    H, q = fa.H, fa.q
    n = fa.g_dim
    g_basis = [vec(b[:n]) for b in q.units.basis]
    counts = {"associativity": 0, "source/target": 0, "units": 0, "inverses": 0, "metric": 0, "vacant E": 0}
    failures: dict[str, object] = {}

    def fail(name, witness):
        failures.setdefault(name, witness)

    for h1, h2 in product(H.elements, repeat=2):
        basis = _composable_basis(fa, h2)
        for xi, eta in basis:
            h, prod = global_multiply(fa, (h1, xi), (h2, eta))
            st = global_source_target(fa, h, prod)
            counts["source/target"] += 1
            if st != (global_source_target(fa, h2, eta)[0], global_source_target(fa, h1, xi)[1]):
                fail("source/target", (h1, h2, xi, eta))
        # metric multiplicativity: bilinear on pairs of basis vectors
        for (x1, e1), (x2, e2) in product(basis, repeat=2):
            p1 = global_multiply(fa, (h1, x1), (h2, e1))[1]
            p2 = global_multiply(fa, (h1, x2), (h2, e2))[1]
            counts["metric"] += 1
            if q.metric(p1, p2) != q.metric(x1, x2) + q.metric(e1, e2):
                fail("metric", (h1, h2, x1, e1, x2, e2))
        # E = H × g composes by (h1, ζ1)∘(h2, ζ2) = (h1h2, ζ2)
        for zeta in g_basis:
            z2 = zeta + (0,) * n
            z1 = fa.on_g(h2).apply(zeta) + (0,) * n
            counts["vacant E"] += 1
            if global_multiply(fa, (h1, z1), (h2, z2)) != (H.mul(h1, h2), z2):
                fail("vacant E", (h1, h2, zeta))
    for h1, h2, h3 in product(H.elements, repeat=3):
        for xi, eta, zeta in _triple_basis(fa, h2, h3):
            a, b, c = (h1, xi), (h2, eta), (h3, zeta)
            left = global_multiply(fa, global_multiply(fa, a, b), c)
            right = global_multiply(fa, a, global_multiply(fa, b, c))
            counts["associativity"] += 1
            if left != right:
                fail("associativity", (h1, h2, h3, xi, eta, zeta))
    for h in H.elements:
        for i in range(2 * n):
            xi = unit_vec(2 * n, i)
            a = (h, xi)
            src, tgt = global_source_target(fa, h, xi)
            counts["units"] += 1
            if global_multiply(fa, global_unit(fa, tgt), a) != a or global_multiply(fa, a, global_unit(fa, src)) != a:
                fail("units", (h, xi))
            inv = global_inverse(fa, a)
            counts["inverses"] += 1
            if global_multiply(fa, inv, a) != global_unit(fa, src) or global_multiply(fa, a, inv) != global_unit(fa, tgt):
                fail("inverses", (h, xi))
    for name, count in counts.items():
        rep.add(name, name not in failures, failures.get(name), detail=f"{count} checked")
    return rep


def quotient_group_law(fa: FiniteAlmostDirac, a: tuple[int, Sequence], b: tuple[int, Sequence]) -> tuple[int, Vec]:
    """(h1, α1)·(h2, α2) = (h1h2, α2 + h2⁻¹•α1) on A/E = H × g*."""
    (h1, a1), (h2, a2) = (a[0], vec(a[1])), (b[0], vec(b[1]))
    return fa.H.mul(h1, h2), vadd(a2, fa.on_dual(fa.H.inv(h2)).apply(a1))


def verify_quotient_group(fa: FiniteAlmostDirac) -> ValidationReport:
    rep = ValidationReport()
    H, n = fa.H, fa.g_dim
    basis = [unit_vec(n, i) for i in range(n)] + [zero_vec(n)]
    bad_assoc = bad_id = bad_inv = None
    for h1, h2, h3 in product(H.elements, repeat=3):
        for a1, a2, a3 in product(basis, repeat=3):
            x, y, z = (h1, a1), (h2, a2), (h3, a3)
            if quotient_group_law(fa, quotient_group_law(fa, x, y), z) != quotient_group_law(fa, x, quotient_group_law(fa, y, z)):
                bad_assoc = bad_assoc or (x, y, z)
    e = (H.identity, zero_vec(n))
    for h in H.elements:
        for a in basis:
            x = (h, a)
            if quotient_group_law(fa, e, x) != x or quotient_group_law(fa, x, e) != x:
                bad_id = bad_id or x
            inv = (H.inv(h), tuple(-v for v in fa.on_dual(h).apply(a)))
            if quotient_group_law(fa, x, inv) != e or quotient_group_law(fa, inv, x) != e:
                bad_inv = bad_inv or x
    rep.add("associativity", bad_assoc is None, bad_assoc)
    rep.add("identity", bad_id is None, bad_id)
    rep.add("inverse", bad_inv is None, bad_inv)
    return rep


# ---------------------------------------------------------------------------
# Bundle modules P = H ×_K p


@dataclass(frozen=True)
class FiniteBundleModule:
    parent: FiniteAlmostDirac
    K: tuple
    fiber: MetrizedModule
    l: Subspace
    K_rep: dict
    coset_reps: dict = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "K", tuple(sorted(set(int(k) for k in self.K))))
        object.__setattr__(self, "K_rep", {int(k): (m if isinstance(m, Matrix) else Matrix(m)) for k, m in self.K_rep.items()})
        if self.coset_reps is None:
            object.__setattr__(self, "coset_reps", self.parent.H.coset_reps(self.K))
        rep = check_bundle_module(self)
        if not rep.ok:
            raise InvalidModel("; ".join(c.name for c in rep.failures))

    def canonical(self, h: int, x: Sequence) -> tuple[int, Vec]:
        """[h, x] written over the coset representative c: [c k0, x] = [c, k0·x]."""
        H = self.parent.H
        c = self.coset_reps[h]
        k0 = H.mul(H.inv(c), h)
        return c, self.K_rep[k0].apply(vec(x))

    def moment(self, h: int, x: Sequence) -> Vec:
        """u([h, x]) = h•u(x)."""
        return self.parent.on_g(h).apply(self.fiber.u.apply(vec(x)))


def check_bundle_module(bm: FiniteBundleModule) -> ValidationReport:
    rep = ValidationReport()
    fa, m = bm.parent, bm.fiber
    H = fa.H
    rep.add("K is a subgroup", H.is_subgroup(bm.K), bm.K)
    rep.add("K_rep defined on K", set(bm.K_rep) == set(bm.K), sorted(bm.K_rep))
    if not rep.ok:
        return rep
    rep.add("fiber over λ of the parent", m.datum == fa.datum)
    ms = [bm.K_rep.get(h, Matrix.identity(m.p_dim)) for h in H.elements]
    rep.add("K_rep is a representation", homomorphism_witness(H, ms, bm.K) is None, homomorphism_witness(H, ms, bm.K))
    for k in bm.K:
        r = bm.K_rep[k]
        rep.add(f"k={k} preserves metric", m.metric.pullback(r) == m.metric, k)
        rep.add(f"k={k} preserves l", image(r, bm.l) == bm.l, k)
        rep.add(f"k={k} u-equivariant", m.u @ r == fa.on_g(k) @ m.u, k)
    rep.add("u∘u* = λ#", m.u @ m.u_star == m.datum.sharp)
    rep.add("l Lagrangian", is_lagrangian(bm.l, m.metric))
    return rep


def bundle_action(bm: FiniteBundleModule, a: tuple[int, Sequence], px: tuple[int, Sequence]) -> tuple[int, Vec]:
    """(h1, (ζ, α))∘[h2, x] = [h1h2, x + u*(h2⁻¹•α)], returned in canonical form."""
    fa = bm.parent
    n = fa.g_dim
    (h1, xi), (h2, x) = (a[0], vec(a[1])), (px[0], vec(px[1]))
    zeta, alpha = xi[:n], xi[n:]
    if zeta != bm.moment(h2, x):
        raise NotComposable("s(h1, ξ) differs from u([h2, x])")
    shifted = vadd(x, bm.fiber.u_star.apply(fa.on_dual(fa.H.inv(h2)).apply(alpha)))
    return bm.canonical(fa.H.mul(h1, h2), shifted)


def verify_bundle_module(bm: FiniteBundleModule) -> ValidationReport:
    """Moment law, representative independence and the E×L -> L bijection, everywhere."""
    rep = ValidationReport()
    fa, m = bm.parent, bm.fiber
    H, n, p = fa.H, fa.g_dim, m.p_dim
    moment_bad = wd_bad = bij_bad = e_bad = None
    checked = {"moment": 0, "representatives": 0, "bijection": 0}
    for h1, h2 in product(H.elements, repeat=2):
        for i in range(p):
            x = unit_vec(p, i)
            for j in range(n):
                alpha = unit_vec(n, j)
                xi = bm.moment(h2, x) + alpha
                res = bundle_action(bm, (h1, xi), (h2, x))
                checked["moment"] += 1
                _, tgt = global_source_target(fa, h1, xi)
                if bm.moment(*res) != tgt:
                    moment_bad = moment_bad or (h1, h2, x, alpha)
                for k in bm.K:
                    alt = (H.mul(h2, H.inv(k)), bm.K_rep[k].apply(x))
                    checked["representatives"] += 1
                    if bundle_action(bm, (h1, xi), alt) != res:
                        wd_bad = wd_bad or (h1, h2, k, x, alpha)
            # E acts by translation
            xi0 = bm.moment(h2, x) + (0,) * n
            if bundle_action(bm, (h1, xi0), (h2, x)) != bm.canonical(H.mul(h1, h2), x):
                e_bad = e_bad or (h1, h2, x)
        # E_{h1} × L_{h2K} -> L_{h1h2K}: composable pairs ((h1, h2•u(x)), [h2, x]) with x ∈ l
        pairs = [bundle_action(bm, (h1, bm.moment(h2, x) + zero_vec(n)), (h2, x)) for x in bm.l.basis]
        images = Matrix.from_columns([y for _, y in pairs], p) if pairs else Matrix.zeros(p, 0)
        checked["bijection"] += 1
        if images.rank() != bm.l.dim or image(images) != bm.l:
            bij_bad = bij_bad or (h1, h2)
    rep.add("moment law", moment_bad is None, moment_bad, detail=f"{checked['moment']} checked")
    rep.add("representative independence", wd_bad is None, wd_bad, detail=f"{checked['representatives']} checked")
    rep.add("E acts by translation", e_bad is None, e_bad)
    rep.add("E×L -> L bijection", bij_bad is None, bij_bad, detail=f"{checked['bijection']} checked")
    return rep


def quotient_action(bm: FiniteBundleModule, a: tuple[int, Sequence], px: tuple[int, Sequence]) -> tuple[int, Vec]:
    """(h1, α)·[h2, x̄] = [h1h2, x̄ + u*(h2⁻¹•α) mod l] on P/L, canonical form.

    x̄ is given in the canonical coordinates of p/l.
    """
    fa, m = bm.parent, bm.fiber
    H = fa.H
    qs = quotient(full_space(m.p_dim), bm.l)
    (h1, alpha), (h2, xbar) = (a[0], vec(a[1])), (px[0], vec(px[1]))
    x = qs.lift(xbar)
    moved = vadd(x, m.u_star.apply(fa.on_dual(H.inv(h2)).apply(alpha)))
    c, y = bm.canonical(H.mul(h1, h2), moved)
    return c, qs.project(y)


def _orbit_is_everything(bm: FiniteBundleModule) -> bool:
    """Orbit of [e, 0̄] under A/E: over each coset, the union of the subspaces
    reached by single group elements must contain a full copy of p/l."""
    fa, m = bm.parent, bm.fiber
    H, n = fa.H, fa.g_dim
    qs = quotient(full_space(m.p_dim), bm.l)
    reached: dict[int, bool] = {}
    origin = zero_vec(qs.dim)
    for h1 in H.elements:
        pts = [quotient_action(bm, (h1, unit_vec(n, j)), (H.identity, origin)) for j in range(n)]
        base = quotient_action(bm, (h1, zero_vec(n)), (H.identity, origin))
        c = base[0]
        sub = Subspace(qs.dim, tuple(vsub(pt[1], base[1]) for pt in pts)) if n else Subspace(qs.dim, ())
        full = sub.dim == qs.dim and base[1] == origin
        reached[c] = reached.get(c, False) or full
    cosets = set(bm.coset_reps.values())
    return all(reached.get(c, False) for c in cosets)


def quotient_action_transitivity(bm: FiniteBundleModule) -> bool:
    """Transitivity of A/E on P/L computed three ways, which must agree."""
    m = bm.fiber
    by_orbit = _orbit_is_everything(bm)
    qs = quotient(full_space(m.p_dim), bm.l)
    by_fiber = (qs.projection @ m.u_star).rank() == qs.dim
    by_rank = injective_on(m.u, bm.l)
    if not by_orbit == by_fiber == by_rank:
        raise IdentityViolation(f"transitivity verdicts disagree: {by_orbit}, {by_fiber}, {by_rank}")
    return by_rank


# ---------------------------------------------------------------------------
# Dual structures


def _twisted_module(bm: FiniteBundleModule, h2: int) -> tuple[Matrix, Matrix, LinearGroupoid]:
    """For fixed h2, the action on the representative fiber is a general module
    of q with u' = units∘h2•u and j' = u*∘h2⁻¹• on the g* part."""
    fa, m = bm.parent, bm.fiber
    n = fa.g_dim
    u_prime = units_inclusion(n) @ fa.on_g(h2) @ m.u
    j_prime = hstack([Matrix.zeros(m.p_dim, n), m.u_star @ fa.on_dual(fa.H.inv(h2))])
    return j_prime, u_prime, fa.q.base


def dual_pairing_check(bm: FiniteBundleModule, re_decompositions: int = 50, seed: int = 0) -> bool:
    """⟨α∘η, v∘y⟩ = ⟨α,v⟩ + ⟨η,y⟩ for the dual action, over every (h1, h2),
    plus independence of the decomposition x = v∘y on random samples."""
    fa, m = bm.parent, bm.fiber
    n, p = fa.g_dim, m.p_dim
    rng = random.Random(seed)
    one = Matrix.identity(2 * n)
    for h2 in fa.H.elements:
        j, u, gpd = _twisted_module(bm, h2)
        if not dual_module_pairing_holds(j, u, gpd):
            return False
        dual_pairs = kernel(hstack([(one - gpd.t).T, -(j @ (one - gpd.s)).T])).basis
        for _ in range(max(1, re_decompositions // fa.H.order)):
            # random composable dual pair and a random x in the fiber
            pair = zero_vec(2 * n + p)
            for b in dual_pairs:
                pair = vadd(pair, vscale(rng.randint(-3, 3), b))
            alpha, eta = pair[: 2 * n], pair[2 * n:]
            acted = vadd(eta, u.T.apply(alpha))
            x = vec(rng.randint(-3, 3) for _ in range(p))
            values = set()
            for _ in range(re_decompositions):
                a_v = vec(rng.randint(-3, 3) for _ in range(n))
                y = vsub(x, m.u_star.apply(fa.on_dual(fa.H.inv(h2)).apply(a_v)))
                v = u.apply(y)[:n] + a_v
                if vadd(y, j.apply(vsub(v, gpd.s.apply(v)))) != x:
                    raise IdentityViolation("decomposition does not compose back to x")
                values.add(dot(alpha, v) + dot(eta, y))
            if values != {dot(acted, x)}:
                return False
    return True


def dual_groupoid_pairing_check(fa: FiniteAlmostDirac) -> bool:
    return dual_pairing_holds(fa.q.base)


# ---------------------------------------------------------------------------
# Assembly


def assemble_from_classifying_data(
    q: MetrizedLinearGroupoid,
    H: FiniteGroup,
    bullet: GroupRep,
    K: Sequence[int],
    l: Subspace,
) -> FiniteBundleModule:
    """(P, L) = (H ×_K s⁻¹(l)/s⁻¹(l)⊥, H ×_K l) with K acting through the bullet action."""
    fa = FiniteAlmostDirac(q, H, bullet)
    d = fa.datum
    if not is_form_coisotropic(l, d.lam):
        raise NotLambdaCoisotropic("λ#(ann l) is not contained in l")
    for k in K:
        if image(fa.on_g(k), l) != l:
            raise NotKStable(f"l is not stable under k={k}")
    hs = homspace_from_coisotropic(d, l)
    qs = hs.quotient
    k_rep = {}
    for k in K:
        r = bullet(k)
        if not image(r, qs.ambient) <= qs.ambient or not image(r, qs.kernel) <= qs.kernel:
            raise IdentityViolation("bullet action does not preserve s⁻¹(l) and its orthogonal")
        k_rep[k] = qs.projection @ r @ qs.section
    return FiniteBundleModule(fa, tuple(K), hs.module, hs.l, k_rep)


__all__ = [
    "FiniteGroup",
    "GroupRep",
    "FiniteAlmostDirac",
    "FiniteBundleModule",
    "global_source_target",
    "global_multiply",
    "global_inverse",
    "verify_global_groupoid",
    "quotient_group_law",
    "verify_quotient_group",
    "bundle_action",
    "verify_bundle_module",
    "quotient_action",
    "quotient_action_transitivity",
    "dual_pairing_check",
    "dual_groupoid_pairing_check",
    "assemble_from_classifying_data",
]
