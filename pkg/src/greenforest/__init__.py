"""Exact Green's functions, hitting times and Kemeny's constant of weighted
digraphs from spanning-forest sums, with brute-force, numeric and Monte
Carlo cross-checks."""

from .errors import *  # noqa: F401,F403
from .forests import (
    RootedSpanningForest,
    UnrootedSpanningForest,
    enumerate_rooted_forests,
    enumerate_unrooted_forests,
    forest_bracket,
    forest_sum_2,
    laplacian,
    rooted_2forest_total,
    tau_edge,
    tau_root,
    tau_undirected,
    two_forest_weights,
)
from .graph import (
    WeightedDigraph,
    complete_graph,
    diamond_graph,
    directed_cycle,
    from_undirected,
    gamma2_graph,
    gamma_graph,
    is_directed_cycle,
    is_simple,
    is_strongly_connected,
    is_undirected,
    parse_graph,
    path_graph,
    to_edge_list,
    to_json,
)
from .greens import (
    GreenKernel,
    StationaryDistribution,
    assemble_normalized,
    green_combinatorial_exact,
    green_combinatorial_float,
    green_combinatorial_undirected_exact,
    green_normalized_float,
    green_normalized_scaled_exact,
    normalized_laplacian,
    stationary,
    trace_green_combinatorial,
    trace_green_normalized,
)
from .linalg import (
    RationalMatrix,
    det_exact,
    minor_det,
    penrose_residuals,
    pinv_rank_one_correction,
    pinv_svd,
    subset_sign,
)
from .verify import verify
from .walks import (
    McEstimate,
    Verdict,
    WalkReport,
    check_bounds,
    commute_exact,
    effective_resistance,
    gamma_lower_bound,
    gamma_sandwich,
    hitting_edge_exact,
    hitting_exact,
    hitting_matrix,
    hitting_mc,
    hitting_solve,
    hitting_sum_identity,
    kemeny,
    kemeny_mc,
    normalized_hitting,
    return_time,
)

__version__ = "0.1.0"
