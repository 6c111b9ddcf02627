"""Exact-arithmetic toolkit for convex lattice polytopes.

Everything runs over Python integers: convex hulls with exact facet data,
lattice point enumeration, affine unimodular equivalence (witness maps,
symmetry groups, canonical forms), symmetric polytopes of prescribed
cardinality built from paraboloid caps, and an exhaustive plane census of
equivalence classes by normalized volume or lattice point count.
"""

from .caps import DEFAULT_MAX_POINTS, max_points
from .census import (
    CensusQuery,
    CensusRecord,
    census_crosscheck,
    cycle_key,
    enumerate_classes,
    growth_table,
    polygon_from_edges,
    records_to_csv,
)
from .equivalence import (
    DivisibilityReport,
    SymmetryGroup,
    are_equivalent,
    canonical_form,
    canonical_vertices,
    conjugate_group,
    divides_bound,
    find_map,
    find_maps,
    generate_O_d,
    orthogonal_unimodular_group,
    partition_classes,
    signed_permutation_group,
    unimodular_group,
)
from .errors import (
    CensusMismatchError,
    ConstructionFailureError,
    DegenerateInputError,
    DimensionMismatchError,
    LatPolyError,
    NonPrimitiveDirectionError,
    NotCentrallySymmetricError,
    ResourceCapError,
)
from .families import (
    ConstructedMember,
    ConstructionPlan,
    ContinuousModel,
    DiagnosticCheck,
    ball_polytope,
    base_disk_points,
    build_symmetric_polytope,
    class_floor,
    continuous_model,
    core_half_hull,
    envelope_half_hull,
    feasible_widths,
    marked_vertices,
    paraboloid_cap_points,
    paraboloid_hull,
    peel,
    peel_capacity,
    plan_construction,
    slice_maximality_audit,
    symmetric_family,
)
from .linalg import UnimodularMap, apply_map, compose, identity_map, inverse
from .polytope import (
    Facet,
    LatticePolytope,
    convex_hull,
    polytope_from_json,
    union_hull,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_POINTS",
    "max_points",
    "CensusQuery",
    "CensusRecord",
    "census_crosscheck",
    "cycle_key",
    "enumerate_classes",
    "growth_table",
    "polygon_from_edges",
    "records_to_csv",
    "DivisibilityReport",
    "SymmetryGroup",
    "are_equivalent",
    "canonical_form",
    "canonical_vertices",
    "conjugate_group",
    "divides_bound",
    "find_map",
    "find_maps",
    "generate_O_d",
    "orthogonal_unimodular_group",
    "partition_classes",
    "signed_permutation_group",
    "unimodular_group",
    "CensusMismatchError",
    "ConstructionFailureError",
    "DegenerateInputError",
    "DimensionMismatchError",
    "LatPolyError",
    "NonPrimitiveDirectionError",
    "NotCentrallySymmetricError",
    "ResourceCapError",
    "ConstructedMember",
    "ConstructionPlan",
    "ContinuousModel",
    "DiagnosticCheck",
    "ball_polytope",
    "base_disk_points",
    "build_symmetric_polytope",
    "class_floor",
    "continuous_model",
    "core_half_hull",
    "envelope_half_hull",
    "feasible_widths",
    "marked_vertices",
    "paraboloid_cap_points",
    "paraboloid_hull",
    "peel",
    "peel_capacity",
    "plan_construction",
    "slice_maximality_audit",
    "symmetric_family",
    "UnimodularMap",
    "apply_map",
    "compose",
    "identity_map",
    "inverse",
    "Facet",
    "LatticePolytope",
    "convex_hull",
    "polytope_from_json",
    "union_hull",
]
