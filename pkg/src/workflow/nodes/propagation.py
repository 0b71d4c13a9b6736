"""
Propagation Node

Runs every constraint to a common fixpoint from the declared domains.
"""

from src.engine import build_propagator, propagate_fixpoint
from src.utils.errors import PropagationFailure
from src.utils.utils import progress


def propagation_node(state: dict) -> dict:
    """LangGraph node: fixpoint of the declared domains"""
    verbose = state.get("verbose", False)
    progress("🔄 Propagating to fixpoint...", verbose)

    factory = state.get("propagator_factory") or build_propagator
    try:
        store = propagate_fixpoint(state["model"], factory)
    except PropagationFailure as exc:
        progress(f"   ✗ {exc.reason}", verbose)
        return {"failure": exc.reason, "exit_code": 1, "current_step": "propagation_failed"}

    progress("   ✓ Fixpoint reached", verbose)
    return {"domains": store.as_dict(), "exit_code": 0, "current_step": "propagation_complete"}
