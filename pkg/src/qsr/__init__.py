"""Exact-arithmetic heights and small representations of quadratic forms.

All arithmetic is exact (int / Fraction); floating point appears only in
decimal approximations attached to exact values for display.
"""

from .constructions import (
    BoundExpr,
    HyperplaneInV,
    SolutionReport,
    avoid_hyperplanes,
    dietmann_exponent,
    isotropic_avoiding,
    isotropic_transport,
    pigeonhole_window,
    represent_field_avoiding,
    represent_integral,
    represent_integral_avoiding,
)
from .enumeration import HAVE_COMPILED, backend_name, solve_box
from .errors import DomainError, SearchExhausted
from .harness import Instance, InstanceSpec, gen_instance, run_suite
from .heights import (
    AlgebraicSet,
    SparsePoly,
    Subspace,
    algebraic_set_membership,
    global_height,
    homogenize,
    inhom_height,
    intersect,
    poly_height,
    subspace_height,
)
from .lattice import (
    IntegralBasis,
    OracleResult,
    enumerate_naive,
    enumerate_representations,
    enumerate_zeros,
    saturate,
)
from .quadspace import (
    Certainty,
    GramForm,
    QuadSpace,
    WittCertificate,
    bilinear,
    evaluate,
    find_isotropic,
    form_height_H,
    form_height_h,
    is_definite,
    orth_complement,
    radical,
    restrict,
    signature,
    witt_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicSet", "BoundExpr", "Certainty", "DomainError", "GramForm",
    "HAVE_COMPILED", "HyperplaneInV", "Instance", "InstanceSpec",
    "IntegralBasis", "OracleResult", "QuadSpace", "SearchExhausted",
    "SolutionReport", "SparsePoly", "Subspace", "WittCertificate",
    "algebraic_set_membership", "avoid_hyperplanes", "backend_name",
    "bilinear", "dietmann_exponent", "enumerate_naive",
    "enumerate_representations", "enumerate_zeros", "evaluate",
    "find_isotropic", "form_height_H", "form_height_h", "gen_instance",
    "global_height", "homogenize", "inhom_height", "intersect",
    "is_definite", "isotropic_avoiding", "isotropic_transport",
    "orth_complement", "pigeonhole_window", "poly_height", "radical",
    "represent_field_avoiding", "represent_integral",
    "represent_integral_avoiding", "restrict", "run_suite", "saturate",
    "signature", "solve_box", "subspace_height", "witt_decompose",
]
