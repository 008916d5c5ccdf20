"""Exact computation of Brauer groups of affine cubic surface complements.

The library computes, in exact arithmetic, the Brauer-group invariants of
complements of singular hyperplane sections in smooth cubic surfaces:
the combinatorics of the 27 lines and the Weyl group W(E6), the algebraic
tables via Galois cohomology of Picard lattices, the twisted-invariant
tables over Q, and an end-to-end pipeline for explicit rational examples.
"""

from .brauer import (
    BoundaryDescriptor,
    GeometricBrauer,
    TablePair,
    algebraic_tables,
    geometric_brauer,
    qmodz_invariants,
    residue_kernel_check,
    transcendental_bound,
    twist_invariants,
)
from .cohomology import (
    FiniteGModule,
    LatticeGModule,
    h1_cyclic_oracle,
    h1_lattice,
    invariants_finite,
    invariants_lattice,
)
from .cubiclattice import (
    HYPERPLANE,
    TritangentTrio,
    intersection,
    lines27,
    pic_action,
    pic_module,
    quotient_by_trio,
    reference_trio,
    torsion_free_line_conic,
    tritangent_trios,
    weyl_group,
)
from .intlinalg import (
    FinAbGroup,
    IntMatrix,
    SmithForm,
    cokernel_structure,
    kernel_basis,
    mod_kernel,
    snf,
)
from .perms import (
    PermGroup,
    exponent,
    group_order,
    orbit_count,
    setwise_stabilizer,
    subgroups_up_to_conjugacy,
)
from .qexamples import (
    EckardtVerdict,
    GaloisType,
    cubic_galois_type,
    eckardt_concurrent,
    example_brauer,
    find_admissible_a,
    general_position,
    principality_check,
)
from .ratpoly import RationalPoly, discriminant, resultant

__version__ = "0.1.0"

__all__ = [
    "BoundaryDescriptor",
    "EckardtVerdict",
    "FinAbGroup",
    "FiniteGModule",
    "GaloisType",
    "GeometricBrauer",
    "HYPERPLANE",
    "IntMatrix",
    "LatticeGModule",
    "PermGroup",
    "RationalPoly",
    "SmithForm",
    "TablePair",
    "TritangentTrio",
    "algebraic_tables",
    "cokernel_structure",
    "cubic_galois_type",
    "discriminant",
    "eckardt_concurrent",
    "example_brauer",
    "exponent",
    "find_admissible_a",
    "general_position",
    "geometric_brauer",
    "group_order",
    "h1_cyclic_oracle",
    "h1_lattice",
    "intersection",
    "invariants_finite",
    "invariants_lattice",
    "kernel_basis",
    "lines27",
    "mod_kernel",
    "orbit_count",
    "pic_action",
    "pic_module",
    "principality_check",
    "qmodz_invariants",
    "quotient_by_trio",
    "reference_trio",
    "residue_kernel_check",
    "resultant",
    "setwise_stabilizer",
    "snf",
    "subgroups_up_to_conjugacy",
    "torsion_free_line_conic",
    "transcendental_bound",
    "tritangent_trios",
    "twist_invariants",
    "weyl_group",
]
