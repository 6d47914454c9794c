"""Weighted multi-curves on surfaces with boundary: exact intersection
numbers, arc-coordinate censuses, mapping-class orbits and ball-volume
experiments."""

from .surface import (
    SurfaceSig,
    RibbonSpine,
    CurveClass,
    RationalCurrent,
    SurfaceError,
    build_standard_spine,
    complexity_constants,
    canonicalize_curve,
    interior_boundary_split,
    boundary_current,
)
from .boundary_order import (
    BoundaryRay,
    cyclic_order,
    intersection_number,
    self_intersection,
    current_pairing,
    spine_edge_crossings,
    is_simple,
)
from .hyperbolic import (
    HyperbolicStructure,
    from_fenchel_nielsen,
    curve_length,
    collar_width,
    orthoarc_length,
    comparison_constant_estimate,
    GeometryError,
)
from .dt_census import (
    ArcSystem,
    CensusRecord,
    build_arc_system,
    dt_coordinates,
    is_admissible,
    reconstruct,
    enumerate_census,
    iter_census,
    write_census_csv,
    DTError,
)
from .mcg import (
    MappingClass,
    twist_generators,
    apply,
    orbit_ball,
    orbit_divergence_profile,
    identity_map,
    MCGError,
)
from .decompose import (
    StandardDecomposition,
    SubsurfaceDescription,
    standard_decomposition,
    scc_split,
    disjoint_simple_curves,
    is_binding,
    hull,
    partition_type,
    is_complete_pair,
    DecompositionError,
)
from .measures import (
    simplex_integral,
    simplex_constant_report,
    ml_ball_volume,
    homogeneous_ball_volume,
    homogeneous_ball_volume_quadrature,
    thurston_ball_estimate,
    unit_ball_bounds_experiment,
    orbit_counting_experiment,
    NotLocallyFiniteError,
)

__version__ = "0.1.0"
