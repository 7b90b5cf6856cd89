"""Computer algebra for quasilinear quadratic forms in characteristic 2.

The package works over iterated rational function fields F2(x1, ..., xn)
and their finite inseparable extensions, models diagonal forms
q = a1*X1^2 + ... + ad*Xd^2, and provides exact decision procedures for
their isotropy, splitting, similarity, and birational geometry.
"""

from .birational import (
    DominationVerdict,
    FiberMap,
    RegularityReport,
    RulingCertificate,
    RulingDecomposition,
    construct_ruling,
    decide_birational,
    decide_stably_equivalent,
    essdim_domination_check,
    is_isotropic_over,
    is_regular_quadric,
    unique_self_map_check,
)
from .errors import (
    BadCodimension,
    BadDecomposition,
    DimensionMismatch,
    DimensionTooSmall,
    DivisionByZero,
    DslSyntaxError,
    EmbeddingFailure,
    InconsistencyDetected,
    IndexMismatch,
    IsotropicInput,
    IsSquare,
    NameCollision,
    NotRuled,
    QuasiformError,
    ResourceLimit,
    TowerDepthExceeded,
    UndeclaredVariable,
    UnknownVariable,
    ZeroCoefficient,
    ZeroElement,
    ZeroGenerator,
    ZeroSlot,
)
from .fieldtower import (
    FieldTower,
    TowerElem,
    TowerHom,
    extend_inseparable,
    extend_transcendental,
    invert,
    sqrt_in_tower,
    square,
    tower_substitute,
)
from .forms import (
    FormInvariants,
    QuasilinearForm,
    anisotropic_part,
    decide_similar,
    generic_subform,
    invariants,
    is_anisotropic,
    is_isometric,
    isotropic_vectors_basis,
    total_index,
)
from .gf2poly import Poly, RatFn, poly_gcd, poly_lcm
from .maps import RationalMap, projectively_equal
from .pfister import (
    NormField,
    QuasiPfisterForm,
    SpecialRulingCertificate,
    albert_multiply,
    is_quasi_pfister_neighbor,
    norm_degree,
    norm_field_slots,
    quasi_pfister,
    special_neighbor_ruling,
)
from .splitting import (
    FunctionFieldData,
    SplittingPattern,
    check_hl_bound,
    essential_dimension,
    first_witt_index,
    function_field,
    hl_bound,
    splitting_pattern,
    total_index_over,
)
from .sqlinalg import (
    isotropic_kernel_basis,
    k2_membership,
    k2_rank,
    kernel_from_coefficients,
    span_saturate,
    square_nullspace,
    tower_linear_solve,
    tower_square_root,
)

__version__ = "0.1.0"

__all__ = [
    "BadCodimension",
    "BadDecomposition",
    "DimensionMismatch",
    "DimensionTooSmall",
    "DivisionByZero",
    "DominationVerdict",
    "DslSyntaxError",
    "EmbeddingFailure",
    "FiberMap",
    "FieldTower",
    "FormInvariants",
    "FunctionFieldData",
    "InconsistencyDetected",
    "IndexMismatch",
    "IsSquare",
    "IsotropicInput",
    "NameCollision",
    "NormField",
    "NotRuled",
    "Poly",
    "QuasiPfisterForm",
    "QuasiformError",
    "QuasilinearForm",
    "RatFn",
    "RationalMap",
    "RegularityReport",
    "ResourceLimit",
    "RulingCertificate",
    "RulingDecomposition",
    "SpecialRulingCertificate",
    "SplittingPattern",
    "TowerDepthExceeded",
    "TowerElem",
    "TowerHom",
    "UndeclaredVariable",
    "UnknownVariable",
    "ZeroCoefficient",
    "ZeroElement",
    "ZeroGenerator",
    "ZeroSlot",
    "albert_multiply",
    "anisotropic_part",
    "check_hl_bound",
    "construct_ruling",
    "decide_birational",
    "decide_similar",
    "decide_stably_equivalent",
    "essdim_domination_check",
    "essential_dimension",
    "extend_inseparable",
    "extend_transcendental",
    "first_witt_index",
    "function_field",
    "generic_subform",
    "hl_bound",
    "invariants",
    "invert",
    "is_anisotropic",
    "is_isometric",
    "is_isotropic_over",
    "is_quasi_pfister_neighbor",
    "is_regular_quadric",
    "isotropic_kernel_basis",
    "isotropic_vectors_basis",
    "k2_membership",
    "k2_rank",
    "kernel_from_coefficients",
    "norm_degree",
    "norm_field_slots",
    "poly_gcd",
    "poly_lcm",
    "projectively_equal",
    "quasi_pfister",
    "span_saturate",
    "special_neighbor_ruling",
    "splitting_pattern",
    "square",
    "square_nullspace",
    "sqrt_in_tower",
    "tower_linear_solve",
    "tower_square_root",
    "tower_substitute",
    "total_index",
    "total_index_over",
    "unique_self_map_check",
]
