"""Poset metrics on F_q^n, exactly.

Weights and distances induced by a partial order on the coordinates,
linear codes over prime fields, the linear isometry group, the canonical
decomposition under hierarchical posets with closed-form metric
invariants and an explicit MacWilliams identity, and decision procedures
for the ten properties that hold exactly for hierarchical posets.  Every
closed form is paired with a brute-force oracle.
"""

from .code import (
    HammingInvariants,
    LinearCode,
    hamming_invariants,
    hamming_weight_enumerator,
    random_code,
    span,
)
from .characterize import (
    CheckBudget,
    DefectWitness,
    PropertyReport,
    Verdict,
    build_defect,
    check_property,
    dual_coefficient_formulas,
    full_report,
    zero_sum_compositions,
)
from .errors import (
    CapacityError,
    FieldError,
    FormatError,
    InternalCheckError,
    NonHierarchicalError,
    NotAPartialOrderError,
    PosetCodesError,
    ZeroCodeError,
)
from .hierarchy import (
    CanonicalDecomposition,
    HierarchicalInvariants,
    canonical_decompose,
    chebyshev_binary,
    classical_macwilliams_transform,
    closed_invariants,
    hierarchical_weight_enumerator,
    is_p_perfect,
    macwilliams_dual_enumerator,
)
from .isometry import (
    LinearIsometry,
    TriangularMap,
    clean_vector,
    codes_equivalent,
    enumerate_group,
    generators,
    group_order,
)
from .pmetric import (
    PInvariants,
    PWeightEnumerator,
    ball,
    brute_invariants,
    p_distance,
    p_weight,
    p_weight_enumerator,
    sphere,
    support,
)
from .poset import (
    Defect,
    Poset,
    all_hierarchical_posets,
    all_posets,
    are_isomorphic,
    compositions,
)

__version__ = "0.1.0"

__all__ = [
    "Poset", "Defect", "are_isomorphic", "all_posets", "all_hierarchical_posets",
    "compositions",
    "LinearCode", "span", "random_code", "HammingInvariants",
    "hamming_invariants", "hamming_weight_enumerator",
    "p_weight", "p_distance", "support", "ball", "sphere",
    "PInvariants", "PWeightEnumerator", "brute_invariants", "p_weight_enumerator",
    "LinearIsometry", "TriangularMap", "enumerate_group", "generators",
    "group_order", "clean_vector", "codes_equivalent",
    "CanonicalDecomposition", "canonical_decompose",
    "HierarchicalInvariants", "closed_invariants", "is_p_perfect",
    "chebyshev_binary", "hierarchical_weight_enumerator",
    "classical_macwilliams_transform", "macwilliams_dual_enumerator",
    "CheckBudget", "Verdict", "DefectWitness", "PropertyReport",
    "build_defect", "dual_coefficient_formulas", "zero_sum_compositions",
    "check_property", "full_report",
    "PosetCodesError", "FieldError", "FormatError", "NotAPartialOrderError",
    "CapacityError", "ZeroCodeError", "NonHierarchicalError", "InternalCheckError",
]
