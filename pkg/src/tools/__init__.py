"""
Propagation Tools

Flow networks, automaton distances, the soft gcc / soft regular filtering
kernels, the aggregator, brute-force oracles and the instance format.
"""

from .automaton import accepts, edit_to_language, hamming_to_language
from .flownet import (
    MinCostFlowSolver,
    feasible_min_cost_flow,
    forced_arc_cost,
    has_negative_cycle,
    residual,
    shortest_residual_path,
)
from .instance_parser import apply_overrides, load_instance, parse_instance, serialize_instance
from .oracle import (
    brute_force_variable_cost,
    enumerate_min_violation,
    hard_regular_filter,
    oracle_filter,
)
from .softgcc import (
    SoftGccPropagator,
    propagate_soft_gcc,
    propagate_soft_gcc_scc_fastpath,
    violation_val,
    violation_var,
)
from .softregular import (
    SoftRegularPropagator,
    build_layered_edit,
    build_layered_var,
    min_violation,
    propagate_soft_regular,
)

__all__ = [
    "MinCostFlowSolver",
    "feasible_min_cost_flow",
    "residual",
    "shortest_residual_path",
    "forced_arc_cost",
    "has_negative_cycle",
    "accepts",
    "hamming_to_language",
    "edit_to_language",
    "SoftGccPropagator",
    "violation_var",
    "violation_val",
    "propagate_soft_gcc",
    "propagate_soft_gcc_scc_fastpath",
    "SoftRegularPropagator",
    "build_layered_var",
    "build_layered_edit",
    "min_violation",
    "propagate_soft_regular",
    "brute_force_variable_cost",
    "enumerate_min_violation",
    "oracle_filter",
    "hard_regular_filter",
    "parse_instance",
    "load_instance",
    "serialize_instance",
    "apply_overrides",
]
