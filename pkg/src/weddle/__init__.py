"""weddle: exact decomposition of partially symmetric tensors, Weddle
matrices of linear systems of quadrics, and certified counts of their
special points."""

__version__ = "0.1.0"

from .polycore import MultiPoly, PolyMatrix, Rat, as_rat, linear_form, parse_poly
from .tensor import SymmetryClass, Tensor3, decompose
from .loci import (
    LinearSystem,
    RankCertificate,
    RankConclusion,
    WeddleData,
    base_point_theorem_check,
    contraction_matrix,
    cyclic_relation_check,
    gradient_matrix,
    quadric_to_poly,
    poly_to_quadric,
    quadrics_through_points,
    rank5_canonical_system,
    rank5_identity_check,
    rank_lower_bound_certificate,
    rank_r_system,
    sample_general_cyclic,
    system_through_points,
    weddle_matrix,
)

__all__ = [
    "MultiPoly",
    "PolyMatrix",
    "Rat",
    "as_rat",
    "linear_form",
    "parse_poly",
    "SymmetryClass",
    "Tensor3",
    "decompose",
    "LinearSystem",
    "RankCertificate",
    "RankConclusion",
    "WeddleData",
    "base_point_theorem_check",
    "contraction_matrix",
    "cyclic_relation_check",
    "gradient_matrix",
    "quadric_to_poly",
    "poly_to_quadric",
    "quadrics_through_points",
    "rank5_canonical_system",
    "rank5_identity_check",
    "rank_lower_bound_certificate",
    "rank_r_system",
    "sample_general_cyclic",
    "system_through_points",
    "weddle_matrix",
    "__version__",
]
