"""Entanglement distribution on a ring network with a single central hub."""

__version__ = "0.1.0"

from ._prob import DomainError, ProbabilityClampWarning
from .average import (
    AvgScpQuery,
    ScpGrid,
    avg_scp,
    scp_heatmap,
    threshold_boundary,
    threshold_distance,
    threshold_region,
    threshold_shortcuts,
)
from .entanglement import (
    ChainConvention,
    SchmidtCoefficient,
    SwapOutcome,
    distill_prob,
    scp_bound,
    scp_chain,
    scp_chain_table,
    swap_identical,
)
from .montecarlo import (
    EmpiricalDistribution,
    HubRingGraph,
    SeededRun,
    empirical_clustering,
    empirical_mean_network_distance,
    empirical_path_dist,
    exact_chain_scp,
    general_shortest_path_len,
    sample_graph,
    shortest_path_len,
    simulate_chain_scp,
)
from .pathdist import (
    NetworkParams,
    PathLengthDistribution,
    clustering_coefficient,
    mean_actual_distance,
    mean_network_distance,
    path_dist_directed,
    path_dist_undirected,
)
