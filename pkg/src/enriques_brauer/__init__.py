"""Brauer groups of Enriques manifolds via cyclic group cohomology of lattices."""

__version__ = "0.1.0"

from .errors import InputError, PreconditionError
from .exact_linalg import (
    AbelianGroupInvariants,
    IntMatrix,
    cokernel_invariants,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
    solve,
    subquotient_invariants,
)
from .lattice import F2QuadSpace, Lattice, direct_sum, e8_minus, hyperbolic_U, mod2_reduce, rank_one
from .cyclic_gmodule import CyclicGModule, cohomology, norm_endomorphism
from .constructions import (
    FamilySpec,
    abelian_surface_module,
    k3_enriques_module,
    k3n_module,
    kummer_module,
)
from .brauer import BrauerResult, DifferentialMode, brauer_group, reproduction_report

__all__ = [
    "AbelianGroupInvariants",
    "BrauerResult",
    "CyclicGModule",
    "DifferentialMode",
    "F2QuadSpace",
    "FamilySpec",
    "InputError",
    "IntMatrix",
    "Lattice",
    "PreconditionError",
    "abelian_surface_module",
    "brauer_group",
    "cohomology",
    "cokernel_invariants",
    "direct_sum",
    "e8_minus",
    "hermite_normal_form",
    "hyperbolic_U",
    "k3_enriques_module",
    "k3n_module",
    "kernel_basis",
    "kummer_module",
    "mod2_reduce",
    "norm_endomorphism",
    "rank_one",
    "reproduction_report",
    "smith_normal_form",
    "solve",
    "subquotient_invariants",
]
