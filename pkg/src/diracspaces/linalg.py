"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``. Subspaces are kept in
reduced row-echelon form so two subspaces are equal exactly when their
stored bases are equal. Symmetric forms may be degenerate.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, IdentityViolation, NotCoisotropic, NotIsotropic

Scalar = Fraction
Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(x) -> Fraction:
    """Convert ints, strings like ``"3/4"`` and Fractions; refuse floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; use an int, Fraction or 'p/q' string")
    return Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(as_scalar(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vadd(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} and {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} and {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form. Returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv if x else x for x in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


class Matrix:
    """Immutable dense matrix of Fractions. Also used as the linear-map type."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        return m

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    # constructors
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        es = [as_scalar(e) for e in entries]
        return cls._raw(tuple(tuple(es[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        cs = [vec(c) for c in cols]
        if any(len(c) != nrows for c in cs):
            raise DimensionMismatch("column length differs from nrows")
        return cls._raw(tuple(tuple(c[i] for c in cs) for i in range(nrows)), len(cs))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return vstack([hstack(row) for row in blocks])

    # access
    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else tuple((ZERO,) * 0 for _ in range(self.ncols)), self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    # arithmetic
    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
            cols = other.T.rows
            return Matrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols) for r in self.rows),
                other.ncols,
            )
        return self.apply(other)

    def apply(self, v: Sequence) -> Vec:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} map to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # predicates and invariants
    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] / m[c][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), n)


LinearMap = Matrix


def hstack(ms: Sequence[Matrix]) -> Matrix:
    if not ms:
        raise DimensionMismatch("nothing to stack")
    n = ms[0].nrows
    if any(m.nrows != n for m in ms):
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix._raw(tuple(sum((m.rows[i] for m in ms), ()) for i in range(n)), sum(m.ncols for m in ms))


def vstack(ms: Sequence[Matrix]) -> Matrix:
    if not ms:
        raise DimensionMismatch("nothing to stack")
    c = ms[0].ncols
    if any(m.ncols != c for m in ms):
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix._raw(sum((m.rows for m in ms), ()), c)


def block_diag(*ms: Matrix) -> Matrix:
    rows = []
    total = sum(m.ncols for m in ms)
    offset = 0
    for m in ms:
        for r in m.rows:
            rows.append((ZERO,) * offset + r + (ZERO,) * (total - offset - m.ncols))
        offset += m.ncols
    return Matrix._raw(tuple(rows), total)


def dual_map(m: Matrix) -> Matrix:
    """The dual (transpose) map between dual spaces in dual bases."""
    return m.T


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim stored by its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        rows = [vec(b) for b in self.basis]
        if any(len(r) != self.ambient_dim for r in rows):
            raise DimensionMismatch("basis vector length differs from ambient dimension")
        red, piv = rref(rows, self.ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in red))
        object.__setattr__(self, "_pivots", tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return self._pivots

    def basis_matrix(self) -> Matrix:
        """Columns are the canonical basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        residual = list(v)
        for b, p in zip(self.basis, self._pivots):
            c = residual[p]
            if c:
                residual = [x - c * y for x, y in zip(residual, b)]
        return all(x == 0 for x in residual)

    def coordinates(self, v: Sequence) -> Vec:
        """Coordinates of v in the canonical basis (read off at the pivots)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(as_scalar(v[p]) for p in self._pivots)

    def coordinate_map(self) -> Matrix:
        """dim x ambient matrix reading coordinates off the pivot entries."""
        return Matrix._raw(tuple(unit_vec(self.ambient_dim, p) for p in self._pivots), self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        _check_same_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __repr__(self) -> str:
        body = ", ".join("(" + " ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(ambient={self.ambient_dim}, basis=[{body}])"


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, tuple(vec(v) for v in vectors))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(unit_vec(n, i) for i in range(n)))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace(a.ambient_dim, a.basis + b.basis)


def kernel(m: Matrix) -> Subspace:
    red, piv = rref(m.rows, m.ncols)
    free = [j for j in range(m.ncols) if j not in piv]
    vs = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for r, p in zip(red, piv):
            v[p] = -r[f]
        vs.append(v)
    return Subspace(m.ncols, tuple(vs))


def annihilator(s: Subspace) -> Subspace:
    """ann(s) in the dual space, written in the dual basis."""
    return kernel(Matrix._raw(s.basis, s.ambient_dim))


def intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return annihilator(subspace_sum(annihilator(a), annihilator(b)))


def image(m: Matrix, s: Subspace | None = None) -> Subspace:
    """m(s); the whole range of m when s is omitted."""
    if s is None:
        return Subspace(m.nrows, tuple(m.columns()))
    if s.ambient_dim != m.ncols:
        raise DimensionMismatch("subspace does not live in the domain of the map")
    return Subspace(m.nrows, tuple(m.apply(b) for b in s.basis))


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """{v : m v in s}."""
    if s.ambient_dim != m.nrows:
        raise DimensionMismatch("subspace does not live in the codomain of the map")
    ann = annihilator(s)
    return kernel(Matrix._raw(ann.basis, s.ambient_dim) @ m)


def restrict_rank(m: Matrix, s: Subspace) -> int:
    """Rank of m restricted to s."""
    return image(m, s).dim


def complement_basis(inner: Subspace, outer: Subspace) -> list[Vec]:
    """Vectors of outer's canonical basis, taken greedily in pivot order,
    that complete inner's basis to a basis of outer."""
    if not inner <= outer:
        raise ValueError("inner subspace is not contained in outer")
    chosen: list[Vec] = []
    current = inner
    for b in outer.basis:
        if not current.contains(b):
            chosen.append(b)
            current = Subspace(current.ambient_dim, current.basis + (b,))
    return chosen


# ---------------------------------------------------------------------------
# Symmetric forms


@dataclass(frozen=True)
class SymmetricForm:
    """A symmetric bilinear form given by its gram matrix."""

    ambient_dim: int
    gram: Matrix

    def __post_init__(self):
        if self.gram.shape != (self.ambient_dim, self.ambient_dim):
            raise DimensionMismatch(f"gram of shape {self.gram.shape} for ambient {self.ambient_dim}")
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix is not symmetric")

    @classmethod
    def from_gram(cls, gram: Matrix | Sequence[Sequence]) -> "SymmetricForm":
        g = gram if isinstance(gram, Matrix) else Matrix(gram)
        return cls(g.nrows, g)

    @classmethod
    def zero(cls, n: int) -> "SymmetricForm":
        return cls(n, Matrix.zeros(n, n))

    @classmethod
    def hyperbolic(cls, n: int) -> "SymmetricForm":
        """The split form pairing Q^n with its dual on Q^n + Q^n."""
        i, z = Matrix.identity(n), Matrix.zeros(n, n)
        return cls(2 * n, Matrix.block([[z, i], [i, z]]))

    def __call__(self, v: Sequence, w: Sequence) -> Fraction:
        return dot(vec(v), self.gram.apply(vec(w)))

    @property
    def sharp(self) -> Matrix:
        return self.gram

    def radical(self) -> Subspace:
        return kernel(self.gram)

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.ambient_dim

    def inverse(self) -> "SymmetricForm":
        """The dual form on the dual space (requires nondegeneracy)."""
        return SymmetricForm(self.ambient_dim, self.gram.inverse())

    def pullback(self, m: Matrix) -> "SymmetricForm":
        """The form (v, w) -> self(m v, m w)."""
        if m.nrows != self.ambient_dim:
            raise DimensionMismatch("map codomain differs from form's space")
        return SymmetricForm(m.ncols, m.T @ self.gram @ m)

    def pushforward(self, m: Matrix) -> "SymmetricForm":
        """Image of this form, viewed as an element of S^2 of its space, under m."""
        if m.ncols != self.ambient_dim:
            raise DimensionMismatch("map domain differs from form's space")
        return SymmetricForm(m.nrows, m @ self.gram @ m.T)

    def restrict(self, s: Subspace) -> "SymmetricForm":
        """The form restricted to s, in s's canonical basis."""
        return self.pullback(s.basis_matrix())

    def __neg__(self) -> "SymmetricForm":
        return SymmetricForm(self.ambient_dim, -self.gram)


def direct_sum_form(*forms: SymmetricForm) -> SymmetricForm:
    return SymmetricForm(sum(f.ambient_dim for f in forms), block_diag(*(f.gram for f in forms)))


def orth_complement(s: Subspace, form: SymmetricForm) -> Subspace:
    if s.ambient_dim != form.ambient_dim:
        raise DimensionMismatch("subspace and form live on different spaces")
    if s.is_zero():
        return full_space(s.ambient_dim)
    return kernel(Matrix._raw(s.basis, s.ambient_dim) @ form.gram)


class SubspaceKind(str, Enum):
    ISOTROPIC = "isotropic"
    COISOTROPIC = "coisotropic"
    LAGRANGIAN = "lagrangian"
    NONE = "none"


def classify_subspace(s: Subspace, form: SymmetricForm) -> SubspaceKind:
    """Lagrangian wins over isotropic and coisotropic when s = s-perp."""
    perp = orth_complement(s, form)
    if perp == s:
        return SubspaceKind.LAGRANGIAN
    if s <= perp:
        return SubspaceKind.ISOTROPIC
    if perp <= s:
        return SubspaceKind.COISOTROPIC
    return SubspaceKind.NONE


def is_isotropic(s: Subspace, form: SymmetricForm) -> bool:
    return s <= orth_complement(s, form)


def is_coisotropic(s: Subspace, form: SymmetricForm) -> bool:
    return orth_complement(s, form) <= s


def is_lagrangian(s: Subspace, form: SymmetricForm) -> bool:
    return orth_complement(s, form) == s


def is_form_coisotropic(s: Subspace, beta: SymmetricForm) -> bool:
    """beta is an element of S^2 V (gram on V*): beta#(ann s) inside s."""
    if s.ambient_dim != beta.ambient_dim:
        raise DimensionMismatch("subspace and form live on different spaces")
    return image(beta.gram, annihilator(s)) <= s


# ---------------------------------------------------------------------------
# Quotients


@dataclass(frozen=True)
class QuotientSpace:
    """ambient / kernel with a fixed representative section.

    ``projection`` is defined on the whole surrounding space; it kills
    ``kernel`` and the chosen complement of ``ambient``. ``section`` lifts
    quotient coordinates into ``ambient``.
    """

    ambient: Subspace
    kernel: Subspace
    projection: Matrix
    section: Matrix

    @property
    def dim(self) -> int:
        return self.projection.nrows

    @property
    def space_dim(self) -> int:
        return self.ambient.ambient_dim

    def project(self, v: Sequence) -> Vec:
        return self.projection.apply(vec(v))

    def lift(self, xbar: Sequence) -> Vec:
        return self.section.apply(vec(xbar))

    def image_of(self, s: Subspace) -> Subspace:
        """Image in the quotient of a subspace of ``ambient``."""
        if not s <= self.ambient:
            raise ValueError("subspace is not contained in the numerator")
        return image(self.projection, s)


def quotient(ambient: Subspace, kern: Subspace) -> QuotientSpace:
    _check_same_ambient(ambient, kern)
    if not kern <= ambient:
        raise ValueError("kernel is not contained in the numerator")
    n = ambient.ambient_dim
    reps = complement_basis(kern, ambient)
    outside = complement_basis(ambient, full_space(n))
    basis = Matrix.from_columns(list(kern.basis) + reps + outside, n)
    coords = basis.inverse()
    m = len(reps)
    projection = coords.submatrix(range(kern.dim, kern.dim + m), range(n))
    section = Matrix.from_columns(reps, n) if m else Matrix.zeros(n, 0)
    return QuotientSpace(ambient, kern, projection, section)


class Reduction(NamedTuple):
    quotient: QuotientSpace
    form: SymmetricForm


def _induced(q: QuotientSpace, form: SymmetricForm) -> SymmetricForm:
    return form.pullback(q.section)


def coisotropic_reduce(c: Subspace, form: SymmetricForm) -> Reduction:
    """C / C-perp with the induced form."""
    perp = orth_complement(c, form)
    if not perp <= c:
        raise NotCoisotropic("C-perp is not contained in C")
    q = quotient(c, perp)
    induced = _induced(q, form)
    if form.is_nondegenerate() and not induced.is_nondegenerate():
        raise IdentityViolation("induced form on C/C-perp is degenerate")
    return Reduction(q, induced)


def isotropic_reduce(i: Subspace, form: SymmetricForm) -> Reduction:
    """i-perp / i with the induced form."""
    perp = orth_complement(i, form)
    if not i <= perp:
        raise NotIsotropic("subspace is not contained in its orthogonal")
    q = quotient(perp, i)
    return Reduction(q, _induced(q, form))


@dataclass(frozen=True)
class StagedReduction:
    """Both sides of reduction in stages and the map identifying them.

    ``identification`` sends (C∩D)/(C∩D)⊥ to π(D)/π(D)⊥ where π is the
    quotient map of C.
    """

    first: Reduction
    image_in_first: Subspace
    via_image: Reduction
    via_intersection: Reduction
    identification: Matrix


def reduction_in_stages(c: Subspace, d: Subspace, form: SymmetricForm) -> StagedReduction | None:
    """Reduce by C then by the image of D, and compare with reducing by C∩D.

    Returns None when C⊥ is not contained in D. Raises IdentityViolation if
    the two results disagree.
    """
    for name, s in (("c", c), ("d", d)):
        if not is_coisotropic(s, form):
            raise NotCoisotropic(f"{name} is not coisotropic")
    cperp = orth_complement(c, form)
    if not cperp <= d:
        return None
    first = coisotropic_reduce(c, form)
    cd = intersection(c, d)
    d_image = first.quotient.image_of(cd)
    via_image = coisotropic_reduce(d_image, first.form)
    via_inter = coisotropic_reduce(cd, form)
    ident = via_image.quotient.projection @ first.quotient.projection @ via_inter.quotient.section
    if via_image.quotient.dim != via_inter.quotient.dim:
        raise IdentityViolation("staged reductions have different dimensions")
    if not ident.is_invertible():
        raise IdentityViolation("canonical map between staged reductions is not invertible")
    if via_image.form.pullback(ident) != via_inter.form:
        raise IdentityViolation("canonical map between staged reductions is not an isometry")
    return StagedReduction(first, d_image, via_image, via_inter, ident)


def reduction_in_stages_check(c: Subspace, d: Subspace, form: SymmetricForm) -> bool:
    """Whether C⊥ ⊆ D; when it holds, the two reductions are compared exactly."""
    return reduction_in_stages(c, d, form) is not None
