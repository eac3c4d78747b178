"""Connectivity toolkit for Kronecker products of graphs."""

from .connectivity import (
    ConnectivityResult,
    CutSet,
    brute_force_connectivity,
    classify_cut,
    connectivity_result,
    enumerate_min_cuts,
    is_super_kappa,
    kappa_of_deletion_check,
    vertex_connectivity,
)
from .corpus import all_graphs, are_isomorphic, connected_graphs, graphs_up_to
from .errors import (
    BudgetExceededError,
    Graph6Error,
    KronkitError,
    PreconditionError,
    SamplingExhaustedError,
    UnsupportedSizeError,
)
from .graphs import (
    DegreeSummary,
    Graph,
    connected_components,
    degree_summary,
    delete_vertex,
    encode_graph6,
    graph_from_edges,
    is_connected,
    make_complete,
    make_cycle,
    parse_graph6,
    random_graph,
    validate,
)
from .product_analysis import (
    BatchSummary,
    GStarGraph,
    ResidueSystem,
    SkipRecord,
    VerificationReport,
    batch_verify,
    build_gstar,
    build_residue_system,
    check_gstar_connected,
    check_residue_components,
    verify_connectivity_formula,
    verify_super_connectivity,
)
from .products import (
    Fiber,
    ProductGraph,
    ProductVertex,
    fibers,
    is_bipartite,
    kronecker,
    product_degree,
    weichsel_connected,
)

__all__ = [
    "BatchSummary",
    "BudgetExceededError",
    "ConnectivityResult",
    "CutSet",
    "DegreeSummary",
    "Fiber",
    "GStarGraph",
    "Graph",
    "Graph6Error",
    "KronkitError",
    "PreconditionError",
    "ProductGraph",
    "ProductVertex",
    "ResidueSystem",
    "SamplingExhaustedError",
    "SkipRecord",
    "UnsupportedSizeError",
    "VerificationReport",
    "all_graphs",
    "are_isomorphic",
    "batch_verify",
    "brute_force_connectivity",
    "build_gstar",
    "build_residue_system",
    "check_gstar_connected",
    "check_residue_components",
    "classify_cut",
    "connected_components",
    "connected_graphs",
    "connectivity_result",
    "degree_summary",
    "delete_vertex",
    "encode_graph6",
    "enumerate_min_cuts",
    "fibers",
    "graph_from_edges",
    "graphs_up_to",
    "is_bipartite",
    "is_connected",
    "is_super_kappa",
    "kappa_of_deletion_check",
    "kronecker",
    "make_complete",
    "make_cycle",
    "parse_graph6",
    "product_degree",
    "random_graph",
    "validate",
    "verify_connectivity_formula",
    "verify_super_connectivity",
    "vertex_connectivity",
    "weichsel_connected",
]

__version__ = "0.1.0"
