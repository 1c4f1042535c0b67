"""Path metrics, geodesic weights, and resistance metrics on finite weighted graphs."""

from .core import (
    INFINITY,
    TAU_EQ,
    TAU_GEO,
    TAU_HARM,
    ConductanceGraph,
    Path,
    WeightedGraph,
    edge_key,
    graph_digest,
    parse_graph,
    serialize_graph,
    validate,
    weights_close,
)
from .errors import (
    AsymmetryError,
    DiagonalError,
    Disconnected,
    DuplicatePath,
    EmptyInput,
    GraphmetryError,
    InputError,
    InternalInvariantError,
    InvalidMetric,
    MixedStart,
    NegativeWeightError,
    NotDistinct,
    ParseError,
    SameVertex,
    SizeMismatch,
    TooLarge,
    UnknownVertex,
    Unreachable,
)
from .completeness import (
    BOUNDED_SO_FAR,
    DECAYING_RAY,
    DECAYING_STAR,
    EXCEEDS_THRESHOLD,
    FAMILIES,
    UNIT_RAY,
    UNIT_STAR,
    BallScan,
    ComponentReport,
    EquivalenceReport,
    GraphFamily,
    MaximalWeightReport,
    PrefixExtraction,
    PrefixTrie,
    extract_common_prefix_path,
    family_ball_scan,
    family_elf_scan,
    finite_equivalence_report,
    metric_components,
    verify_maximal_weight,
)
from .pathmetric import (
    ElfReport,
    GeodesicSet,
    GeodesicWeight,
    MetricTable,
    all_pairs_metric,
    check_elf,
    enumerate_geodesics,
    geodesic_weight,
    is_generating,
    path_length,
    path_metric,
    single_source_distances,
)
from .resistance import (
    EnergyBreakdown,
    PotentialFunction,
    VariationalReport,
    components,
    effective_resistance,
    energy,
    gamma,
    harmonic_maximizer,
    laplacian_apply,
    laplacian_matrix,
    resistance_matrix,
    verify_variational,
)
from .structure import (
    CompatibilityCertificate,
    NotSeparated,
    SeparationCertificate,
    TreeTheoremReport,
    TriangleReport,
    biconnected_components,
    check_tree_theorem,
    check_triangle_equality,
    compatible_resistance_weight,
    inverse_conductance_weight,
    is_block_graph,
    is_tree,
    separates,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetryError",
    "BOUNDED_SO_FAR",
    "BallScan",
    "CompatibilityCertificate",
    "ComponentReport",
    "ConductanceGraph",
    "DECAYING_RAY",
    "DECAYING_STAR",
    "DiagonalError",
    "Disconnected",
    "DuplicatePath",
    "EXCEEDS_THRESHOLD",
    "ElfReport",
    "EmptyInput",
    "EnergyBreakdown",
    "EquivalenceReport",
    "FAMILIES",
    "GeodesicSet",
    "GeodesicWeight",
    "GraphFamily",
    "GraphmetryError",
    "INFINITY",
    "InputError",
    "InternalInvariantError",
    "InvalidMetric",
    "MaximalWeightReport",
    "MetricTable",
    "MixedStart",
    "NegativeWeightError",
    "NotDistinct",
    "NotSeparated",
    "ParseError",
    "Path",
    "PotentialFunction",
    "PrefixExtraction",
    "PrefixTrie",
    "SameVertex",
    "SeparationCertificate",
    "SizeMismatch",
    "TAU_EQ",
    "TAU_GEO",
    "TAU_HARM",
    "TooLarge",
    "TreeTheoremReport",
    "TriangleReport",
    "UNIT_RAY",
    "UNIT_STAR",
    "UnknownVertex",
    "Unreachable",
    "VariationalReport",
    "WeightedGraph",
    "all_pairs_metric",
    "biconnected_components",
    "check_elf",
    "check_tree_theorem",
    "check_triangle_equality",
    "compatible_resistance_weight",
    "components",
    "edge_key",
    "effective_resistance",
    "energy",
    "enumerate_geodesics",
    "extract_common_prefix_path",
    "family_ball_scan",
    "family_elf_scan",
    "finite_equivalence_report",
    "gamma",
    "geodesic_weight",
    "graph_digest",
    "harmonic_maximizer",
    "inverse_conductance_weight",
    "is_block_graph",
    "is_generating",
    "is_tree",
    "laplacian_apply",
    "laplacian_matrix",
    "metric_components",
    "parse_graph",
    "path_length",
    "path_metric",
    "resistance_matrix",
    "separates",
    "serialize_graph",
    "single_source_distances",
    "validate",
    "verify_maximal_weight",
    "verify_variational",
    "weights_close",
]
