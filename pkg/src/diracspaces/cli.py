"""Command line front end: ``diracspaces <command> WORKSPACE [options]``.

Every command writes a deterministic JSON report (``--report-out``) and a
short PASS/FAIL summary on stdout. Exit status is 0 when every check passed,
1 when some check failed and 2 when the input could not be read.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .diracgroup import (
    build_quadratic_triple,
    check_coisotropic,
    compare_fibers,
    hom_fiber_reduced,
    lambda_from_beta,
    search_coisotropic,
)
from .errors import CandidateDimMismatch, DimensionMismatch, DiracSpacesError, InvalidModel
from .finitemodel import (
    FiniteAlmostDirac,
    FiniteGroup,
    GroupRep,
    assemble_from_classifying_data,
    dual_groupoid_pairing_check,
    dual_pairing_check,
    homomorphism_witness,
    quotient_action_transitivity,
    verify_bundle_module,
    verify_global_groupoid,
    verify_quotient_group,
)
from .lie import DiracManinTriple, QuadraticLieData, validate_triple_data
from .linalg import Matrix, Subspace, image, is_lagrangian
from .lingroupoid import LambdaDatum, from_lambda, injective_on
from .report import ValidationReport
from .workspace import (
    ParseError,
    Workspace,
    dump_json,
    dump_matrix,
    dump_subspace,
    load,
    parse_matrix,
    parse_subspace,
    parse_triple_parts,
    parse_vectors,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Report:
    command: str
    digest: str
    checks: ValidationReport = field(default_factory=ValidationReport)
    objects: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checks.ok

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_sha256": self.digest,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "witness": plain(c.witness), "detail": c.detail}
                for c in self.checks.checks
            ],
            "objects": plain(self.objects),
        }

    def summary(self) -> list[str]:
        lines = []
        for c in self.checks.checks:
            tail = f" [{c.detail}]" if c.detail else ""
            wit = f" witness={plain(c.witness)}" if not c.ok and c.witness is not None else ""
            lines.append(f"{'PASS' if c.ok else 'FAIL'} {c.name}{tail}{wit}")
        n_bad = len(self.checks.failures)
        verdict = "PASS" if self.ok else f"FAIL ({n_bad} of {len(self.checks.checks)} checks failed)"
        lines.append(f"{self.command}: {verdict}")
        return lines


def plain(x: Any) -> Any:
    """JSON-ready copy: rationals become strings, containers become lists or dicts."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Matrix):
        return dump_matrix(x) if x.nrows and x.ncols else []
    if isinstance(x, Subspace):
        return dump_subspace(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return str(x)


# ---------------------------------------------------------------------------
# Commands


def _triple(ws: Workspace, rep: Report) -> DiracManinTriple | None:
    """Validated triple, or None after recording the failed checks."""
    d, beta, g, h, gens = parse_triple_parts(ws)
    checks = validate_triple_data(d, beta, g, h, gens)
    rep.checks.extend(checks, "triple: ")
    if not checks.ok:
        return None
    return DiracManinTriple(QuadraticLieData(d, beta), g, h, gens)


def cmd_validate(ws: Workspace) -> Report:
    rep = Report("validate", ws.digest())
    d, beta, g, h, gens = parse_triple_parts(ws)
    rep.checks.extend(validate_triple_data(d, beta, g, h, gens))
    rep.objects = {"dim": d.dim, "g": g, "h": h, "beta": beta.gram}
    return rep


def cmd_build_q(ws: Workspace) -> Report:
    rep = Report("build-q", ws.digest())
    t = _triple(ws, rep)
    if t is None:
        return rep
    qt = build_quadratic_triple(t)
    direct = lambda_from_beta(t)
    rep.checks.add("gamma nondegenerate", qt.metric.is_nondegenerate())
    rep.checks.add("g Lagrangian in q", is_lagrangian(qt.g, qt.metric))
    rep.checks.add("f(gamma) = beta", qt.f @ qt.metric.gram.inverse() @ qt.f.T == t.beta.gram)
    rep.checks.add("lambda via q = pr_g(beta)", qt.lam == direct, {"via_q": qt.lam.lam.gram, "direct": direct.lam.gram})
    rep.objects = {
        "q_dim": qt.q_dim,
        "gamma": qt.metric.gram,
        "f": qt.f,
        "r": qt.r,
        "g_in_q": qt.g,
        "lambda": qt.lam.lam.gram,
    }
    return rep


def _fiber_checks(rep: Report, prefix: str, module, l: Subspace, lam: LambdaDatum) -> None:
    rep.checks.add(prefix + "l Lagrangian", is_lagrangian(l, module.metric))
    rep.checks.add(prefix + "dim p = 2 dim l", module.p_dim == 2 * l.dim, (module.p_dim, l.dim))
    rep.checks.add(prefix + "u u* = lambda#", module.u @ module.u_star == lam.sharp)
    rep.checks.add(prefix + "u injective on l", injective_on(module.u, l))


def _fiber_dump(module, l: Subspace) -> dict:
    return {"p_dim": module.p_dim, "l_dim": l.dim, "l": l, "u": module.u, "gram": module.metric.gram}


def cmd_homspace(ws: Workspace, c_name: str, mode: str = "dbeta") -> Report:
    rep = Report(f"homspace --via-{mode}" if mode != "both" else "homspace --both", ws.digest())
    t = _triple(ws, rep)
    if t is None:
        return rep
    c = parse_subspace(ws, c_name, t.dim)
    res = check_coisotropic(t, c)
    if isinstance(res, ValidationReport):
        rep.checks.extend(res, "c: ")
        return rep
    rep.checks.extend(_passed(["subalgebra", "beta-coisotropic", "k-invariant"]), "c: ")
    lam = lambda_from_beta(t)
    rep.objects = {"c": res.c, "k": res.k, "c_dim": res.c.dim, "k_dim": res.k.dim}
    if mode in ("dbeta", "both"):
        fib = hom_fiber_reduced(t, res)
        _fiber_checks(rep, "via-dbeta: ", fib.module, fib.l, lam)
        rep.objects["via_dbeta"] = _fiber_dump(fib.module, fib.l)
    if mode in ("q", "both"):
        qt = build_quadratic_triple(t)
        cmp = compare_fibers(qt, res)
        hs = cmp.via_q
        _fiber_checks(rep, "via-q: ", hs.module, hs.l, qt.lam)
        rep.objects["via_q"] = _fiber_dump(hs.module, hs.l)
        if mode == "both":
            iso = cmp.isometry
            red = cmp.reduced.module
            ok = (
                iso.is_invertible()
                and red.metric.pullback(iso) == hs.module.metric
                and red.u @ iso == hs.module.u
                and image(iso, hs.l) == cmp.reduced.l
            )
            rep.checks.add("constructions agree up to isometry", ok)
            rep.objects["isometry_q_to_dbeta"] = iso
    return rep


def _passed(names: Sequence[str]) -> ValidationReport:
    r = ValidationReport()
    for n in names:
        r.add(n, True)
    return r


def cmd_search(ws: Workspace, k_name: str, cand_name: str, max_subset_size: int | None) -> Report:
    rep = Report("search", ws.digest())
    t = _triple(ws, rep)
    if t is None:
        return rep
    try:
        k = parse_subspace(ws, k_name, t.dim)
        cands = parse_vectors(ws, cand_name, t.dim)
    except DimensionMismatch as exc:
        raise CandidateDimMismatch(str(exc)) from None
    found = search_coisotropic(t, k, cands, max_subset_size)
    results = []
    for cd in found:
        fib = hom_fiber_reduced(t, cd)
        results.append({"c": cd.c, "c_dim": cd.c.dim, "p_dim": fib.p_dim, "l_dim": fib.l.dim})
    rep.checks.add("search completed", True, detail=f"{len(found)} found")
    rep.objects = {"k": k, "max_subset_size": max_subset_size, "found": results}
    return rep


def cmd_finite_check(ws: Workspace) -> Report:
    rep = Report("finite-check", ws.digest())
    group = ws.section("group")
    if not isinstance(group, dict) or "table" not in group:
        raise ws.error("group needs 'table'", "group")
    try:
        H = FiniteGroup(group["table"])
    except (InvalidModel, TypeError, ValueError) as exc:
        raise ws.error(f"bad Cayley table: {exc}", "table") from None
    gsec = ws.section("groupoid")
    if not isinstance(gsec, dict) or "lambda" not in gsec:
        raise ws.error("groupoid needs 'lambda'", "groupoid")
    lam = parse_matrix(gsec["lambda"], None, ws, "lambda")
    n = lam.nrows
    datum = LambdaDatum.from_matrix(lam)
    q = from_lambda(datum)
    rsec = ws.section("rep")
    if not isinstance(rsec, dict) or not isinstance(rsec.get("matrices"), list):
        raise ws.error("rep needs 'matrices'", "rep")
    ms = [parse_matrix(m, (2 * n, 2 * n), ws, "matrices") for m in rsec["matrices"]]
    if len(ms) != H.order:
        raise DimensionMismatch(f"{len(ms)} rep matrices for a group of order {H.order}")
    w = homomorphism_witness(H, ms)
    rep.checks.add("rho is a homomorphism", w is None, w)
    if w is not None:
        return rep
    bullet = GroupRep(H, 2 * n, tuple(ms))
    try:
        fa = FiniteAlmostDirac(q, H, bullet)
    except InvalidModel as exc:
        rep.checks.add("action by metrized groupoid automorphisms", False, str(exc))
        return rep
    rep.checks.extend(verify_global_groupoid(fa), "groupoid: ")
    rep.checks.extend(verify_quotient_group(fa), "A/E: ")
    rep.checks.add("dual groupoid pairing", dual_groupoid_pairing_check(fa))
    rep.objects = {"order": H.order, "g_dim": n, "lambda": datum.lam.gram}
    fsec = ws.data.get("fiber")
    if fsec is None:
        return rep
    if not isinstance(fsec, dict) or "K" not in fsec or "l" not in fsec:
        raise ws.error("fiber needs 'K' and 'l'", "fiber")
    K = fsec["K"]
    if not isinstance(K, list) or not all(isinstance(k, int) and 0 <= k < H.order for k in K):
        raise ws.error("fiber.K must list group elements", "K")
    l = parse_subspace(ws, fsec["l"], n)
    try:
        bm = assemble_from_classifying_data(q, H, bullet, K, l)
    except DiracSpacesError as exc:
        rep.checks.add("fiber data", False, f"{type(exc).__name__}: {exc}")
        return rep
    rep.checks.extend(verify_bundle_module(bm), "bundle: ")
    rep.checks.add("dual module pairing", dual_pairing_check(bm))
    rep.objects.update(
        {
            "K": list(bm.K),
            "p_dim": bm.fiber.p_dim,
            "l": bm.l,
            "u": bm.fiber.u,
            "transitive": quotient_action_transitivity(bm),
        }
    )
    return rep


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report-out", metavar="PATH", help="write the JSON report here")
    common.add_argument("--quiet", action="store_true", help="no summary on stdout")
    p = argparse.ArgumentParser(prog="diracspaces", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "build-q", "finite-check"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("workspace")
    hs = sub.add_parser("homspace", parents=[common])
    hs.add_argument("workspace")
    hs.add_argument("--c", required=True, metavar="NAME", help="subspace name of c")
    via = hs.add_mutually_exclusive_group()
    via.add_argument("--via-q", dest="mode", action="store_const", const="q")
    via.add_argument("--via-dbeta", dest="mode", action="store_const", const="dbeta")
    via.add_argument("--both", dest="mode", action="store_const", const="both")
    hs.set_defaults(mode="dbeta")
    se = sub.add_parser("search", parents=[common])
    se.add_argument("workspace")
    se.add_argument("--k", required=True, metavar="NAME")
    se.add_argument("--candidates", required=True, metavar="NAME")
    se.add_argument("--max-subset-size", type=int, default=None)
    return p


def run(args: argparse.Namespace) -> Report:
    ws = load(args.workspace)
    commands: dict[str, Callable[[], Report]] = {
        "validate": lambda: cmd_validate(ws),
        "build-q": lambda: cmd_build_q(ws),
        "homspace": lambda: cmd_homspace(ws, args.c, args.mode),
        "search": lambda: cmd_search(ws, args.k, args.candidates, args.max_subset_size),
        "finite-check": lambda: cmd_finite_check(ws),
    }
    return commands[args.command]()


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = run(args)
    except (ParseError, DimensionMismatch, CandidateDimMismatch, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(rep.to_json()))
    if not args.quiet:
        print("\n".join(rep.summary()))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
