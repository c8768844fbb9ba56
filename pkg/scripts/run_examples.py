"""Build the small worked examples and print their dimensions.

    python scripts/run_examples.py
"""
from diracspaces.diracgroup import build_quadratic_triple, check_coisotropic, compare_fibers, lambda_from_beta
from diracspaces.finitemodel import quotient_action_transitivity, verify_bundle_module, verify_global_groupoid
from diracspaces.fixtures import z2_sign_model, z2_swap_model, z4_rotation_model
from diracspaces.lie import cartan_dirac_sl2, standard_triple, two_dim_nonabelian
from diracspaces.linalg import full_space, span
from diracspaces.workspace import dump_matrix


def show_triple(name, t, cs):
    qt = build_quadratic_triple(t)
    print(f"{name}: dim d = {t.dim}, dim q = {qt.q_dim}")
    print(f"  lambda# = {dump_matrix(lambda_from_beta(t).lam.gram)}")
    for label, c in cs.items():
        cd = check_coisotropic(t, c)
        if not hasattr(cd, "k"):
            print(f"  {label}: rejected ({', '.join(x.name for x in cd.failures)})")
            continue
        cmp = compare_fibers(qt, cd)
        print(f"  {label}: dim k = {cd.k.dim}, dim l = {cmp.reduced.l.dim}, dim p = {cmp.reduced.p_dim}")


def main():
    show_triple("standard triple of [x, y] = y", standard_triple(two_dim_nonabelian()), {
        "c = {x, y}": span([[1, 0, 0, 0], [0, 1, 0, 0]], 4),
        "c = {x, y*}": span([[1, 0, 0, 0], [0, 0, 0, 1]], 4),
        "c = {x, x*, y*}": span([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4),
        "c = {y, y*}": span([[0, 1, 0, 0], [0, 0, 0, 1]], 4),
    })
    show_triple("Cartan-Dirac sl2", cartan_dirac_sl2(), {
        "c = borel": span([[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 1, 0]], 6),
        "c = d": full_space(6),
    })
    for build in (z2_sign_model, z2_swap_model, z4_rotation_model):
        bm = build()
        g = verify_global_groupoid(bm.parent)
        b = verify_bundle_module(bm)
        print(
            f"{build.__name__}: |H| = {bm.parent.H.order}, K = {bm.K}, dim p = {bm.fiber.p_dim}, "
            f"groupoid {'ok' if g.ok else 'FAIL'}, module {'ok' if b.ok else 'FAIL'}, "
            f"transitive = {quotient_action_transitivity(bm)}"
        )


if __name__ == "__main__":
    main()
