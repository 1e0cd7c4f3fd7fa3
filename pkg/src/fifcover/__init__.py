"""Rhombus coverings and guaranteed range bounds for affine fractal
interpolation functions."""

from .analysis import (
    FixedPoint,
    Word,
    compose_word,
    composed_coefficient_arrays,
    enumerate_words,
    fixed_point,
    lipschitz_constant,
    rho_distance,
)
from .covering import (
    Covering,
    RangeBounds,
    Rhombus,
    build_covering,
    compare_with_reference,
    max_pairwise_distance,
    point_to_covering_distance,
    range_bounds,
    rhombus_contains,
    rhombus_vertices,
)
from .model import (
    AffineMap,
    FifSystem,
    InterpolationData,
    apply_map,
    build_system,
    validate_data,
)
from .oracle import (
    AttractorSample,
    chaos_game,
    deterministic_iterate,
    hausdorff_estimate,
    verify_containment,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AttractorSample",
    "Covering",
    "FifSystem",
    "FixedPoint",
    "InterpolationData",
    "RangeBounds",
    "Rhombus",
    "Word",
    "apply_map",
    "build_covering",
    "build_system",
    "chaos_game",
    "compare_with_reference",
    "compose_word",
    "composed_coefficient_arrays",
    "deterministic_iterate",
    "enumerate_words",
    "fixed_point",
    "hausdorff_estimate",
    "lipschitz_constant",
    "max_pairwise_distance",
    "point_to_covering_distance",
    "range_bounds",
    "rho_distance",
    "rhombus_contains",
    "rhombus_vertices",
    "validate_data",
    "verify_containment",
]
