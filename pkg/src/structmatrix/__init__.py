"""StructMatrix: structure-level condensation and visualization of large graphs."""

from .classifier import (Bipartition, StructureType, VOCABULARY, check_bipartite,
                         classify)
from .condenser import (Condensation, StructureInstance, compute_inter_edges,
                        condense, order_segments)
from .exporter import export_bundle
from .graph_io import Graph, GraphFormatError, bfs_sample, induced_subgraph, load_edge_list
from .layout import (BACKGROUND, Cells, LayoutPlan, build_cells, color_value,
                     plan_layout, project, rasterize_cells)
from .renderer import ColorRamp, ramp_color, write_image
from .shatter import ShatterConfig, connected_components, extract_hub_stars, select_hubs, shatter

__version__ = "0.1.0"

__all__ = [
    "BACKGROUND", "Bipartition", "Cells", "ColorRamp", "Condensation", "Graph",
    "GraphFormatError", "LayoutPlan", "ShatterConfig", "StructureInstance",
    "StructureType", "VOCABULARY", "bfs_sample", "build_cells", "check_bipartite",
    "classify", "color_value", "compute_inter_edges", "condense",
    "connected_components", "export_bundle", "extract_hub_stars",
    "induced_subgraph", "load_edge_list", "order_segments", "plan_layout",
    "project", "ramp_color", "rasterize_cells", "select_hubs", "shatter",
    "write_image",
]
