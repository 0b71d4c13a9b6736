from .propagators import PostedConstraint, PropagatorFactory, build_propagator
from .search import BranchAndBound, propagate_fixpoint, run_fixpoint, solve_min
from .store import DomainStore

__all__ = [
    "DomainStore",
    "PostedConstraint",
    "PropagatorFactory",
    "build_propagator",
    "run_fixpoint",
    "propagate_fixpoint",
    "BranchAndBound",
    "solve_min",
]
