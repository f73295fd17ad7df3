"""Reconstruct straight-line embedded graphs from directional augmented
persistence diagrams."""

from .datagen import GenConfig, generate_graph, read_graph, write_graph
from .edge_recon import reconstruct_edges_2d, reconstruct_edges_dd
from .errors import ReconstructionError
from .experiments import reconstruct, roundtrip
from .geometry import EmbeddedGraph
from .oracle import DiagramOracle
from .persistence import AugmentedDiagram, DiagramPoint, compute_apd
from .vertex_recon import reconstruct_vertices_2d, reconstruct_vertices_dd

__all__ = [
    "AugmentedDiagram", "DiagramOracle", "DiagramPoint", "EmbeddedGraph", "GenConfig",
    "ReconstructionError", "compute_apd", "generate_graph", "read_graph", "reconstruct",
    "reconstruct_edges_2d", "reconstruct_edges_dd", "reconstruct_vertices_2d",
    "reconstruct_vertices_dd", "roundtrip", "write_graph",
]
