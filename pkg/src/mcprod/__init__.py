"""Exact computer algebra for Maurer-Cartan higher products.

Everything is computed over the rationals with exact arithmetic: free
graded-commutative differential algebras truncated at a degree bound,
finite-dimensional differential graded Lie algebras given by structure
constants, the tensor DGLA A+ (x) L, Maurer-Cartan higher products and
classical Massey products, odd algebraic spherical fibrations, the
annihilation-ideal membership test, and the descend construction that
trades one odd fibration variable for a central extension.
"""

from mcprod.cdga import CohomologyClass, Element, FreeCDGA, NotACocycle
from mcprod.dgla import (
    FDGLA,
    Filtration,
    LieCochain,
    MCProductData,
    NotNilpotent,
    build_N_tilde,
    ce_differential,
    extension_cocycle,
    massey_data,
    perturb_differential,
    truncate_at_zero,
)
from mcprod.fibrations import (
    AlgebraicFibration,
    AnnihilationResult,
    DescendResult,
    OddSphericalStep,
    adjoin_odd,
    annihilates,
    build_truncated_TA,
    descend,
    gysin_kernel,
    pushforward,
    split_defining_system,
)
from mcprod.products import (
    DefiningSystem,
    MasseyResult,
    MCProduct,
    characteristic_map,
    gauge_homotopy_check,
    lift_system,
    massey_product,
    mc_product,
)
from mcprod.tensor import TensorElement, curvature, gauge_action, is_mc

__all__ = [
    "FreeCDGA",
    "Element",
    "CohomologyClass",
    "NotACocycle",
    "FDGLA",
    "Filtration",
    "MCProductData",
    "LieCochain",
    "NotNilpotent",
    "massey_data",
    "extension_cocycle",
    "ce_differential",
    "build_N_tilde",
    "perturb_differential",
    "truncate_at_zero",
    "TensorElement",
    "curvature",
    "gauge_action",
    "is_mc",
    "DefiningSystem",
    "MCProduct",
    "MasseyResult",
    "lift_system",
    "mc_product",
    "massey_product",
    "characteristic_map",
    "gauge_homotopy_check",
    "AlgebraicFibration",
    "OddSphericalStep",
    "AnnihilationResult",
    "DescendResult",
    "adjoin_odd",
    "pushforward",
    "gysin_kernel",
    "build_truncated_TA",
    "annihilates",
    "split_defining_system",
    "descend",
]
