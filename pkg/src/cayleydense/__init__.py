"""Exact diameter, density and tightness analysis for Cayley digraphs on finite Abelian groups."""

from .abelian import (
    GroupElement,
    InvariantFactors,
    add,
    canonical_invariant_factors,
    enumerate_groups,
    generates,
)
from .cayley import (
    CayleyDigraph,
    DistanceProfile,
    diameter,
    dilate_digraph,
    distance_profile,
    solid_density,
    upsilon,
)
from .density import (
    INFINITE,
    REGISTRY,
    DensityConstant,
    Rational,
    ceil_root,
    in_Cd,
    lower_bound,
    max_order,
    min_attaining_x,
    tightness,
    tightness_coefficient,
)
from .errors import (
    CayleyDenseError,
    ConjectureRefutation,
    InternalConsistencyError,
    MddConstructionError,
)
from .kappa_search import KappaCache, KappaRecord, SearchSpec, gap_table, kappa
from .mdd import (
    LShape,
    Mdd,
    build_mdd,
    dilate_mdd,
    extract_lshape,
    is_proper,
    lshape_solid_diameter,
    lshape_tessellation_matrix,
    lshape_validate,
    phi,
    solid_diameter,
    verify_mdd,
)
from .zmatrix import SnfDecomposition, det, proper_generating_set, scale, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "CayleyDenseError",
    "CayleyDigraph",
    "ConjectureRefutation",
    "DensityConstant",
    "DistanceProfile",
    "GroupElement",
    "INFINITE",
    "InternalConsistencyError",
    "InvariantFactors",
    "KappaCache",
    "KappaRecord",
    "LShape",
    "Mdd",
    "MddConstructionError",
    "REGISTRY",
    "Rational",
    "SearchSpec",
    "SnfDecomposition",
    "add",
    "build_mdd",
    "canonical_invariant_factors",
    "ceil_root",
    "det",
    "diameter",
    "dilate_digraph",
    "dilate_mdd",
    "distance_profile",
    "enumerate_groups",
    "extract_lshape",
    "gap_table",
    "generates",
    "in_Cd",
    "is_proper",
    "kappa",
    "lower_bound",
    "lshape_solid_diameter",
    "lshape_tessellation_matrix",
    "lshape_validate",
    "max_order",
    "min_attaining_x",
    "phi",
    "proper_generating_set",
    "scale",
    "smith_normal_form",
    "solid_density",
    "solid_diameter",
    "tightness",
    "tightness_coefficient",
    "upsilon",
    "verify_mdd",
]
