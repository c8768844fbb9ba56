"""Reading and writing workspace files.

A workspace is a JSON document. Scalars are strings such as ``"3/4"`` (plain
JSON integers are accepted too; floats are rejected). Sections:

``lie_algebra``  ``{"dim": n, "brackets": [[i, j, [c_0, ..., c_{n-1}]], ...]}``
``form``         ``{"gram": [[...], ...]}``, β ∈ S²d as the matrix of β#
``subspaces``    ``{"name": [[...], ...], ...}`` spanning vectors per name
``triple``       ``{"g": name, "h": name, "k_generators": [matrix, ...]}``
``groupoid``     ``{"lambda": matrix}``, λ# for the normal-form groupoid
``group``        ``{"table": [[...], ...]}`` Cayley table on 0..n-1
``rep``          ``{"matrices": [matrix, ...]}`` one matrix per group element
``fiber``        ``{"K": [elements], "l": name}``
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import DimensionMismatch, DiracSpacesError, InvalidTriple
from .lie import DiracManinTriple, LieAlgebra, QuadraticLieData, validate_triple_data
from .linalg import Matrix, Subspace, SymmetricForm, span

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def _position(text: str, idx: int) -> tuple[int, int]:
    if idx < 0:
        return 1, 1
    return text.count("\n", 0, idx) + 1, idx - (text.rfind("\n", 0, idx) + 1) + 1


class ParseError(DiracSpacesError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Workspace:
    text: str
    data: dict

    def locate(self, key: str) -> tuple[int, int]:
        """Line and column of the first occurrence of ``"key"`` in the source."""
        return _position(self.text, self.text.find(json.dumps(key)))

    def error(self, message: str, key: str) -> ParseError:
        return ParseError(message, *self.locate(key))

    def section(self, name: str) -> Any:
        if name not in self.data:
            raise ParseError(f"missing section {name!r}", 1, 1)
        return self.data[name]

    def digest(self) -> str:
        canon = json.dumps(self.data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(canon.encode()).hexdigest()


def loads(text: str) -> Workspace:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except _FloatFound as exc:
        line, col = _position(text, text.find(exc.literal))
        raise ParseError(f"floating-point literal {exc.literal} is not allowed; write it as a string 'p/q'", line, col) from None
    if not isinstance(data, dict):
        raise ParseError("workspace must be a JSON object", 1, 1)
    return Workspace(text, data)


def load(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


class _FloatFound(Exception):
    def __init__(self, literal: str):
        self.literal = literal


def _reject_float(literal: str):
    raise _FloatFound(literal)


def parse_scalar(x: Any, ws: Workspace | None = None, key: str = "") -> Fraction:
    if isinstance(x, bool):
        raise _err(ws, f"boolean where a rational was expected in {key!r}", key)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise _err(ws, f"zero denominator in {x!r}", key) from None
    raise _err(ws, f"cannot read {x!r} as a rational", key)


def _err(ws: Workspace | None, message: str, key: str) -> ParseError:
    return ws.error(message, key) if ws is not None else ParseError(message)


def parse_vector(v: Any, n: int | None = None, ws: Workspace | None = None, key: str = "") -> tuple:
    if not isinstance(v, list):
        raise _err(ws, f"expected a list in {key!r}", key)
    out = tuple(parse_scalar(x, ws, key) for x in v)
    if n is not None and len(out) != n:
        raise DimensionMismatch(f"{key}: vector of length {len(out)}, expected {n}")
    return out


def parse_matrix(m: Any, shape: tuple[int, int] | None = None, ws: Workspace | None = None, key: str = "") -> Matrix:
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise _err(ws, f"expected a nonempty list of rows in {key!r}", key)
    rows = [parse_vector(r, None, ws, key) for r in m]
    if len({len(r) for r in rows}) != 1:
        raise _err(ws, f"ragged matrix in {key!r}", key)
    mat = Matrix(rows)
    if shape is not None and mat.shape != shape:
        raise DimensionMismatch(f"{key}: matrix of shape {mat.shape}, expected {shape}")
    return mat


def parse_lie_algebra(ws: Workspace) -> LieAlgebra:
    sec = ws.section("lie_algebra")
    if not isinstance(sec, dict) or "dim" not in sec:
        raise ws.error("lie_algebra needs 'dim'", "lie_algebra")
    n = sec["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ws.error("lie_algebra.dim must be a natural number", "dim")
    brackets: dict[tuple[int, int], tuple] = {}
    for entry in sec.get("brackets", []):
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(i, int) for i in entry[:2])):
            raise ws.error("each bracket is [i, j, vector]", "brackets")
        i, j, v = entry
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionMismatch(f"bracket index out of range: [{i}, {j}] in dim {n}")
        vv = parse_vector(v, n, ws, "brackets")
        key, val = ((i, j), vv) if i < j else ((j, i), tuple(-x for x in vv))
        if i == j:
            if any(vv):
                raise ws.error(f"[e{i}, e{i}] must vanish", "brackets")
            continue
        if key in brackets and brackets[key] != val:
            raise ws.error(f"conflicting values for bracket {key}", "brackets")
        brackets[key] = val
    return LieAlgebra.from_brackets(n, brackets)


def parse_form(ws: Workspace, n: int) -> SymmetricForm:
    sec = ws.section("form")
    if not isinstance(sec, dict) or "gram" not in sec:
        raise ws.error("form needs 'gram'", "form")
    gram = parse_matrix(sec["gram"], (n, n), ws, "gram") if n else Matrix.zeros(0, 0)
    if not gram.is_symmetric():
        raise ws.error("form gram matrix is not symmetric", "gram")
    return SymmetricForm(n, gram)


def parse_vectors(ws: Workspace, name: str, n: int) -> list[tuple]:
    """The spanning vectors stored under ``name`` ("subspace" is accepted as the section name too)."""
    key = "subspaces" if "subspaces" in ws.data or "subspace" not in ws.data else "subspace"
    subs = ws.section(key)
    if not isinstance(subs, dict) or name not in subs:
        raise ws.error(f"no subspace named {name!r}", key)
    vecs = subs[name]
    if not isinstance(vecs, list):
        raise ws.error(f"subspace {name!r} must be a list of vectors", name)
    return [parse_vector(v, n, ws, name) for v in vecs]


def parse_subspace(ws: Workspace, name: str, n: int) -> Subspace:
    return span(parse_vectors(ws, name, n), n)


def parse_triple_parts(ws: Workspace):
    """(algebra, beta, g, h, k_generators) without validating the triple."""
    d = parse_lie_algebra(ws)
    beta = parse_form(ws, d.dim)
    sec = ws.section("triple")
    if not isinstance(sec, dict) or "g" not in sec or "h" not in sec:
        raise ws.error("triple needs 'g' and 'h'", "triple")
    g = parse_subspace(ws, sec["g"], d.dim)
    h = parse_subspace(ws, sec["h"], d.dim)
    gens = tuple(parse_matrix(m, (d.dim, d.dim), ws, "k_generators") for m in sec.get("k_generators", []))
    return d, beta, g, h, gens


# ---------------------------------------------------------------------------
# Serialization


def scalar_str(x: Fraction) -> str:
    return str(Fraction(x))


def dump_vector(v) -> list[str]:
    return [scalar_str(x) for x in v]


def dump_matrix(m: Matrix) -> list[list[str]]:
    return [dump_vector(r) for r in m.rows]


def dump_subspace(s: Subspace) -> list[list[str]]:
    return [dump_vector(b) for b in s.basis]


def dump_form(f: SymmetricForm) -> list[list[str]]:
    return dump_matrix(f.gram)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def algebra_section(a: LieAlgebra) -> dict:
    """Sparse bracket list for i < j, nonzero brackets only."""
    brackets = [
        [i, j, dump_vector(a.structure[i][j])]
        for i in range(a.dim)
        for j in range(i + 1, a.dim)
        if any(a.structure[i][j])
    ]
    return {"dim": a.dim, "brackets": brackets}


def triple_workspace(t, subspaces: dict[str, Subspace] | None = None) -> dict:
    """Workspace document for a triple; ``g`` and ``h`` are stored under those names."""
    subs = {"g": dump_subspace(t.g), "h": dump_subspace(t.h)}
    for name, s in (subspaces or {}).items():
        subs[name] = dump_subspace(s) if isinstance(s, Subspace) else [dump_vector(v) for v in s]
    doc = {
        "lie_algebra": algebra_section(t.d),
        "form": {"gram": dump_form(t.beta)},
        "subspaces": subs,
        "triple": {"g": "g", "h": "h"},
    }
    if t.k_generators:
        doc["triple"]["k_generators"] = [dump_matrix(m) for m in t.k_generators]
    return doc


def read_triple(ws: Workspace):
    """The triple described by the workspace; raises if it is not a valid triple."""
    d, beta, g, h, gens = parse_triple_parts(ws)
    rep = validate_triple_data(d, beta, g, h, gens)
    if not rep.ok:
        raise InvalidTriple("; ".join(c.name for c in rep.failures))
    return DiracManinTriple(QuadraticLieData(d, beta), g, h, gens)
