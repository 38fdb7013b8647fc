"""Cograph editing through modular decomposition.

Graphs are immutable values over vertex ids ``0..n-1``. The main entry
points are :func:`build_mdt`, :func:`exact_edit` and :func:`heuristic_edit`.
"""

from .editing import (
    EditSet,
    HeuristicResult,
    MergeRecord,
    SpiderStep,
    apply,
    decompose_into_merge_trace,
    edit_set,
    exact_edit,
    heuristic_edit,
    merge_edit_subset,
    merge_many,
    merge_pair,
    merge_steps,
    module_violation,
    oracle_exact_edit,
    select_merge_pair,
    trace_edit_union,
    weighted_cograph_edit,
)
from .errors import CapacityError, CographError, ContractError, InputError, InvariantViolation, RecognitionError
from .genbench import GeneratorConfig, generate, perturb, random_cograph, run_bench
from .graph import (
    Cotree,
    Graph,
    P4Witness,
    TreeNode,
    build_cotree,
    complement,
    connected_components,
    cotree_to_graph,
    count_p4s,
    enumerate_p4s,
    find_p4,
    induced_subgraph,
    is_cograph,
    tree_to_graph,
)
from .modules import (
    MDTree,
    build_mdt,
    enumerate_all_modules,
    is_module,
    lowest_prime_module,
    lowest_prime_node,
    maximal_modular_partition,
    quotient,
    strong_modules,
    strong_modules_oracle,
)
from .spider import SpiderDecomposition, edit_spider, is_p4_sparse, is_spider, recognize_spider
from .twins import TwinPartition, has_nontrivial_twins, twin_partition

__version__ = "0.1.0"
