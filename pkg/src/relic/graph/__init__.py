from relic.graph.csr import (
    KRONECKER_PROBS,
    Graph,
    from_edge_list,
    generate_kronecker,
    kronecker_samples,
    load_edge_list,
)
from relic.graph.kernels import (
    UNREACHED,
    betweenness_centrality,
    bfs,
    connected_components_sv,
    pagerank,
    sssp,
    triangle_count,
)

__all__ = [
    "KRONECKER_PROBS",
    "UNREACHED",
    "Graph",
    "betweenness_centrality",
    "bfs",
    "connected_components_sv",
    "from_edge_list",
    "generate_kronecker",
    "kronecker_samples",
    "load_edge_list",
    "pagerank",
    "sssp",
    "triangle_count",
]
