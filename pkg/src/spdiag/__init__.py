"""Posets of type A, categories of diagonals, socle-projective modules and
the associated cluster-algebra computations."""

__version__ = "0.1.0"

from .cluster import (
    Seed,
    all_cluster_variables,
    membership_check,
    mutate,
    projective_variables,
    subalgebra_generators,
    verify_generation,
)
from .diagcat import (
    ar_quiver_ct,
    ar_quiver_sp,
    hom_dim,
    is_nonfrozen,
    is_star_diagonal,
    sp_diagonals,
    sp_moves,
    support,
    theta_module,
)
from .equivalence import omega, verify_equivalence
from .laurent import LaurentPoly
from .polygon import (
    Diagonal,
    Triangulation,
    crosses,
    elementary_moves,
    fans,
    is_triangulation,
    peak_diagonal,
    quiver_from_triangulation,
    rotate,
    triangulation_from_quiver,
)
from .poset import (
    Poset,
    classify_sincere,
    decompose_type_A,
    find_forbidden_peak_subposet,
    hasse_quiver,
    is_type_A,
    neighbors,
    poset_from_quiver,
    validate_alien_set,
    width,
    z_subquiver,
)
from .quiver import Quiver, path_quiver
from .repcat import (
    GenModule,
    ThinModule,
    enumerate_indecomposable_sp,
    hom_dim_modules,
    is_socle_projective,
    thin_is_sp,
)
