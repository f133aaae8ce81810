"""Exact search, constructions and bounds for k-local positive +/-1 edge weighings."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    GraphError,
    GraphFormatError,
    WeightedGraph,
    average_degree,
    bridges,
    is_connected,
    is_tree,
    max_degree,
    peel_positive_cycle_edges,
    split_tree,
    total_weight,
    y_delta_transform,
)
from .subgraphs import (  # noqa: E402
    SubgraphWitness,
    check_local_positivity,
    enumerate_connected_edge_subsets,
    is_k_local_positive,
    min_weight_connected_k_subgraph,
)
from .constructions import (  # noqa: E402
    ConstructionSpec,
    alternating_comb,
    clipped_star,
    comb,
    dense_block_graph,
    paper_weighing,
    subdivided_star,
)
from .gnk import certify_ratio_bound, even_base_variant, gnk_table, theorem_c_bounds  # noqa: E402
from .trees import canonical_form, enumerate_free_trees, trees_isomorphic  # noqa: E402
from .extremal import (  # noqa: E402
    ExtremalResult,
    FamilyConstraint,
    estimate_slope,
    extremal_over_trees,
    min_weighing,
)
