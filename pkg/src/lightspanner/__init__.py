"""Light near-additive spanners for weighted graphs, with exact certification."""

from .errors import (
    DisconnectedGraphError,
    GenerationError,
    GraphFormatError,
    SamplingError,
    SpannerError,
)
from .generate import FAMILIES, generate_graph
from .graph import (
    DistanceTable,
    Path,
    WeightedGraph,
    dijkstra,
    multi_source_dijkstra,
    shortest_path,
)
from .graphio import FORMATS, read_graph, write_graph
from .nets import DeltaNet, NetHierarchy, build_net_hierarchy, greedy_delta_net, max_level
from .spanner import (
    Bunch,
    LevelSampling,
    Spanner,
    build_spanner,
    build_wmax_spanner,
    bunch_of,
    normalize,
    sample_levels,
    scale_index,
    spanner_from_json_dict,
)
from .trees import SltForest, SpanningTree, mst, slt, slt_forest
from .verify import (
    LemmaSuiteReport,
    LightnessReport,
    NetReport,
    SltReport,
    StretchReport,
    additive_stretch_constant,
    delta_parameter,
    verify_lemma_suite,
    verify_lightness,
    verify_net,
    verify_slt,
    verify_stretch,
)

__version__ = "0.1.0"

__all__ = [
    "Bunch",
    "DeltaNet",
    "DisconnectedGraphError",
    "DistanceTable",
    "FAMILIES",
    "FORMATS",
    "GenerationError",
    "GraphFormatError",
    "LemmaSuiteReport",
    "LevelSampling",
    "LightnessReport",
    "NetHierarchy",
    "NetReport",
    "Path",
    "SamplingError",
    "SltForest",
    "SltReport",
    "SpannerError",
    "Spanner",
    "SpanningTree",
    "StretchReport",
    "WeightedGraph",
    "additive_stretch_constant",
    "build_net_hierarchy",
    "build_spanner",
    "build_wmax_spanner",
    "bunch_of",
    "delta_parameter",
    "dijkstra",
    "generate_graph",
    "greedy_delta_net",
    "max_level",
    "mst",
    "multi_source_dijkstra",
    "normalize",
    "read_graph",
    "sample_levels",
    "scale_index",
    "shortest_path",
    "slt",
    "slt_forest",
    "spanner_from_json_dict",
    "verify_lemma_suite",
    "verify_lightness",
    "verify_net",
    "verify_slt",
    "verify_stretch",
    "write_graph",
]
