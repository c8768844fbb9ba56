"""Regenerate the JSON workspaces in tests/fixtures."""
from __future__ import annotations

import copy
import pathlib

from diracspaces.lie import cartan_dirac_sl2, standard_triple, two_dim_nonabelian
from diracspaces.linalg import Matrix, block_diag
from diracspaces.workspace import dump_json, dump_matrix, triple_workspace

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def write(name: str, doc: dict) -> None:
    (OUT / name).write_text(dump_json(doc), encoding="utf-8")
    print("wrote", name)


def standard() -> dict:
    # basis x, y, x*, y* of h ⋉ h* with [x, y] = y
    t = standard_triple(two_dim_nonabelian())
    return triple_workspace(
        t,
        {
            "c_lagrangian": [[1, 0, 0, 0], [0, 0, 0, 1]],  # span{x} ⋉ ann(x)
            "c_coisotropic": [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],  # span{x} ⋉ h*
            "c_ideal": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],  # h ⋉ ann(span{y})
            "c_all": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            "c_not_subalgebra": [[0, 1, 0, 0], [0, 0, 0, 1]],
            "k_x": [[1, 0, 0, 0]],
            "candidates": [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]],
        },
    )


def cartan() -> dict:
    # sl2 ⊕ sl2 with basis (e, h, f) in each summand
    t = cartan_dirac_sl2()
    return triple_workspace(
        t,
        {
            "c_borel": [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 1, 0]],
            "c_all": [[int(i == j) for j in range(6)] for i in range(6)],
        },
    )


def finite(matrices, lam, K, l) -> dict:
    table = [[(a + b) % len(matrices) for b in range(len(matrices))] for a in range(len(matrices))]
    return {
        "group": {"table": table},
        "groupoid": {"lambda": lam},
        "rep": {"matrices": [dump_matrix(m) for m in matrices]},
        "subspaces": {"l": l},
        "fiber": {"K": K, "l": "l"},
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    std = standard()
    write("standard_triple.json", std)
    write("cartan_sl2.json", cartan())

    broken = copy.deepcopy(std)
    # [x, y] = y and [x, x*] = 0 but [y, x*] = x breaks Jacobi on (x, y, x*)
    broken["lie_algebra"]["brackets"].append([1, 2, ["1", "0", "0", "0"]])
    write("broken_jacobi.json", broken)

    missing = copy.deepcopy(std)
    del missing["form"]
    write("missing_section.json", missing)

    one = Matrix.identity(4)
    write("z2_sign.json", finite([one, -one], [[1, 0], [0, 0]], [0], [[1, 0]]))
    write("z2_trivial.json", finite([one, one], [[1, 0], [0, 0]], [0, 1], [[1, 0]]))
    swap = Matrix([[0, 1], [1, 0]])
    write("z2_swap.json", finite([one, block_diag(swap, swap)], [[1, 1], [1, 1]], [0, 1], [[1, 1]]))
    write("z2_corrupted_rep.json", finite([one, one.scale(2)], [[1, 0], [0, 0]], [0], [[1, 0]]))


if __name__ == "__main__":
    main()
