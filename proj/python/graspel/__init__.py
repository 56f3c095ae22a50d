"""Spectral graph learning from data.

Thin wrapper over the C++ core: graph densification (``learn``), spectral
clustering, sparsification, embedding export, and synthetic recovery
experiments.
"""

from ._graspel import (
    CandidateEdge,
    SparseGraph,
    accuracy,
    connected_components,
    edge_set_metrics,
    effective_resistance,
    embedding_coordinates,
    gen_er_graph,
    gen_gaussian_graph,
    initial_knn_graph,
    laplacian_dense,
    learn,
    nmi,
    read_graph,
    sample_smooth_signals,
    smallest_eigenpairs,
    spectral_clustering,
    spectral_sparsify,
    write_graph,
)

__all__ = [
    "CandidateEdge",
    "SparseGraph",
    "accuracy",
    "connected_components",
    "edge_set_metrics",
    "effective_resistance",
    "embedding_coordinates",
    "gen_er_graph",
    "gen_gaussian_graph",
    "initial_knn_graph",
    "laplacian_dense",
    "learn",
    "nmi",
    "read_graph",
    "sample_smooth_signals",
    "smallest_eigenpairs",
    "spectral_clustering",
    "spectral_sparsify",
    "write_graph",
]
