"""Street-network vehicle routing benchmark toolkit.

Builds routable graphs from street centerline data, generates delivery
instances whose spatial distribution follows per-street urban density
weights, and ships baseline solvers, evaluation, file formats and an
SVG renderer for working with the resulting benchmark sets.
"""

__version__ = "0.1.0"

from .density import (
    DEFAULT_REGION_PENALTY,
    DEFAULT_TYPE_PENALTY,
    DEFAULT_ZONE_PENALTY,
    PenaltyTable,
    density,
    load_penalty_overrides,
    street_weight,
)
from .errors import ParseError, ValidationError, VRPBenchError
from .fileio import batch_generate, parse_instance, read_instance, serialize_instance, write_instance
from .fixtures import synthetic_city
from .instances import (
    GenerationSpec,
    Instance,
    assign_counts,
    generate,
    pick_street,
    place_deliveries,
)
from .intersect import DEFAULT_SNAP_EPS, split_at_intersections
from .network import (
    DistanceOracle,
    StreetNetwork,
    build_graph,
    centroid_vertex,
    extract_network,
    generate_grid_network,
    insert_point_on_edge,
    shortest_distance,
)
from .render import RenderStyle, render_svg, route_path_vertices
from .solution import (
    INFEASIBLE,
    OBJECTIVES,
    RouteReport,
    Solution,
    best_permutation_bruteforce,
    concatenate,
    evaluate,
    parse_solution,
    partition,
    route_length,
    serialize_solution,
    validate_solution,
)
from .solvers import SolverConfig, local_search_improve, nearest_neighbor_construct
from .streets import (
    REGIONS,
    STREET_TYPES,
    ZONES,
    Segment,
    SegmentSoup,
    StreetInfo,
    StreetPolyline,
    read_street_file,
    soup_from_streets,
    write_street_file,
)

__all__ = [
    "DEFAULT_REGION_PENALTY",
    "DEFAULT_SNAP_EPS",
    "DEFAULT_TYPE_PENALTY",
    "DEFAULT_ZONE_PENALTY",
    "DistanceOracle",
    "GenerationSpec",
    "INFEASIBLE",
    "Instance",
    "OBJECTIVES",
    "ParseError",
    "PenaltyTable",
    "REGIONS",
    "RenderStyle",
    "RouteReport",
    "STREET_TYPES",
    "Segment",
    "SegmentSoup",
    "Solution",
    "SolverConfig",
    "StreetInfo",
    "StreetNetwork",
    "StreetPolyline",
    "VRPBenchError",
    "ValidationError",
    "ZONES",
    "assign_counts",
    "batch_generate",
    "best_permutation_bruteforce",
    "build_graph",
    "centroid_vertex",
    "concatenate",
    "density",
    "evaluate",
    "extract_network",
    "generate",
    "generate_grid_network",
    "insert_point_on_edge",
    "load_penalty_overrides",
    "local_search_improve",
    "nearest_neighbor_construct",
    "parse_instance",
    "parse_solution",
    "partition",
    "pick_street",
    "place_deliveries",
    "read_instance",
    "read_street_file",
    "render_svg",
    "route_length",
    "route_path_vertices",
    "serialize_instance",
    "serialize_solution",
    "shortest_distance",
    "soup_from_streets",
    "split_at_intersections",
    "street_weight",
    "synthetic_city",
    "validate_solution",
    "write_instance",
    "write_street_file",
]
