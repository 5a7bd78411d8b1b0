"""Minimum path coverings of trees and the L(2,1)-labelings of their complements."""
from .errors import (
    ConditionError,
    ConstructionError,
    ContractError,
    GraphParseError,
    PathLabelError,
    ResourceError,
    ShapeError,
)
from .graph import (
    Graph,
    GraphStats,
    Vine,
    classify,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    format_edge_list,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    path_graph,
    spider,
    stats,
    to_dot,
    to_graph6,
    vines,
)
from .pathcover import (
    PathCovering,
    Theorem7Data,
    expand_tree,
    formula_bounds,
    is_2_sparse,
    is_general_2_sparse,
    theorem7_path_cover,
    theorem12_path_cover,
    theorem13_path_cover,
    tree_path_cover,
)
from .labeling import (
    ComplementInvariants,
    Labeling,
    islands_of,
    labeling_from_cover,
    lambda_rho_of_complement,
    validate_l21,
)
from .oracles import (
    OracleBudget,
    enumerate_trees,
    oracle_lambda,
    oracle_lambda_rho,
    oracle_path_cover,
    oracle_rho,
    prufer_decode,
    prufer_encode,
    random_tree,
)
from .islands import (
    DuisVerdict,
    LabeledTree,
    apply_type1,
    apply_type2,
    apply_type3,
    certify_F_membership,
    duis,
    generate_F,
    make_labeled_generalized_star,
    make_labeled_path,
    replay_script,
    sequence_set,
)

__version__ = "0.1.0"
