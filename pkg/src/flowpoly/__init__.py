"""Exact counting, volumes and vertices of flow polytopes of signed graphs."""

from .dynamic import dyn_decompose, dyn_kpf, enumerate_dynamic_flows
from .errors import FlowPolyError
from .graph import SignedEdge, SignedGraph, dimension, edge, parse_graph, root_vector
from .kostant import ehrhart, ehrhart_polynomial_fit, enumerate_integer_flows, kpf
from .special import FamilySpec, MorrisParams, conjecture_report, family_graph, morris_closed, morris_ct
from .subdivision import subdivide_full
from .vertices import cycle_parity, enumerate_vertices_2e1, enumerate_vertices_general, is_vertex
from .volume import volume, volume_crosscheck, volume_negative, volume_signed_2e1, volume_via_ehrhart

__all__ = [
    "FamilySpec", "FlowPolyError", "MorrisParams", "SignedEdge", "SignedGraph",
    "conjecture_report", "cycle_parity", "dimension", "dyn_decompose", "dyn_kpf", "edge",
    "ehrhart", "ehrhart_polynomial_fit", "enumerate_dynamic_flows", "enumerate_integer_flows",
    "enumerate_vertices_2e1", "enumerate_vertices_general", "family_graph", "is_vertex", "kpf",
    "morris_closed", "morris_ct", "parse_graph", "root_vector", "subdivide_full", "volume",
    "volume_crosscheck", "volume_negative", "volume_signed_2e1", "volume_via_ehrhart",
]
