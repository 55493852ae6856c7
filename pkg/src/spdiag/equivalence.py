"""The functor from sp-diagonals to socle-projective modules, and a checker
that it is an equivalence on a given instance."""
from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .diagcat import composite_nonzero, hom_dim, is_sp_diagonal, sp_diagonals, support
from .errors import NotSpDiagonal
from .polygon import Triangulation, quiver_from_triangulation
from .poset import Poset, poset_from_quiver
from .quiver import sort_labels
from .repcat import (
    ThinModule,
    composite_nonzero_modules,
    enumerate_indecomposable_sp,
    hom_dim_modules,
    thin_is_sp,
)


def alien_poset(T: Triangulation, F: Iterable[tuple]) -> Poset:
    return poset_from_quiver(quiver_from_triangulation(T).add_arrows(tuple(map(tuple, F))))


def omega(g: Sequence[int], T: Triangulation, F: Iterable[tuple], P: Poset | None = None) -> ThinModule:
    """Thin module on supp(g) over the poset of Q_T + F."""
    F = tuple(tuple(a) for a in F)
    if not is_sp_diagonal(g, T, F):
        raise NotSpDiagonal(f"{tuple(g)} is not an sp-diagonal")
    P = alien_poset(T, F) if P is None else P
    M = ThinModule(P, support(g, T))
    if not thin_is_sp(M.support, P):
        raise AssertionError(f"image of {tuple(g)} is not socle-projective")
    return M


def verify_equivalence(T: Triangulation, F: Iterable[tuple] = (), compositions: bool = True) -> dict:
    """Compare objects, Hom dimensions and (optionally) the zero pattern of
    composites on both sides. Mismatches are collected, never raised."""
    F = tuple(tuple(a) for a in F)
    Q = quiver_from_triangulation(T)
    P = alien_poset(T, F)
    diags = [o.diagonal for o in sp_diagonals(T, F)]
    images = [omega(g, T, F, P) for g in diags]
    mods = enumerate_indecomposable_sp(P, Q)
    mismatches = []

    image_supports = [m.support for m in images]
    mod_supports = {m.support for m in mods}
    injective = len(set(image_supports)) == len(image_supports)
    dense = set(image_supports) == mod_supports
    if not injective:
        mismatches.append({"kind": "object", "detail": "two sp-diagonals share a support"})
    for s in sorted(mod_supports - set(image_supports), key=lambda s: sort_labels(s)):
        mismatches.append({"kind": "object", "detail": "module not hit", "support": list(sort_labels(s))})
    for s in sorted(set(image_supports) - mod_supports, key=lambda s: sort_labels(s)):
        mismatches.append({"kind": "object", "detail": "image not indecomposable sp",
                           "support": list(sort_labels(s))})

    k = len(diags)
    hom_d = [[hom_dim(diags[i], diags[j], T) for j in range(k)] for i in range(k)]
    hom_m = [[hom_dim_modules(images[i], images[j]) for j in range(k)] for i in range(k)]
    for i, j in product(range(k), repeat=2):
        if hom_d[i][j] != hom_m[i][j]:
            mismatches.append({"kind": "hom", "source": list(diags[i]), "target": list(diags[j]),
                               "diag": hom_d[i][j], "mod": hom_m[i][j]})

    comp_checked = 0
    if compositions:
        for i, j, l in product(range(k), repeat=3):
            if len({i, j, l}) < 3 or not (hom_d[i][j] and hom_d[j][l]):
                continue
            if hom_m[i][j] != 1 or hom_m[j][l] != 1:
                continue
            comp_checked += 1
            cd = composite_nonzero(diags[i], diags[j], diags[l], T)
            cm = composite_nonzero_modules(images[i], images[j], images[l])
            if cd != cm:
                mismatches.append({"kind": "composition",
                                   "path": [list(diags[i]), list(diags[j]), list(diags[l])],
                                   "diag": cd, "mod": cm})

    return {
        "n": T.n,
        "alien": [list(a) for a in F],
        "sp_diagonals": [list(g) for g in diags],
        "supports": [list(sort_labels(s)) for s in image_supports],
        "object_bijection": injective and dense and len(mods) == k,
        "num_sp_diagonals": k,
        "num_modules": len(mods),
        "hom_matrix_diag": hom_d,
        "hom_matrix_mod": hom_m,
        "compositions_checked": comp_checked,
        "mismatches": mismatches,
        "ok": not mismatches and injective and dense,
    }
