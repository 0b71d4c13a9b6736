"""
Search Node

Branch-and-bound on the model's objective.
"""

from config.templates import STATISTICS_LINE
from src.engine import build_propagator, solve_min
from src.utils.utils import progress


def search_node(state: dict) -> dict:
    """LangGraph node: minimize the objective"""
    verbose = state.get("verbose", False)
    model = state["model"]
    target = model.objective or "first solution"
    progress(f"🔍 Searching ({target})...", verbose)

    result = solve_min(model, state.get("propagator_factory") or build_propagator)

    stats = result.statistics
    progress(
        "   "
        + STATISTICS_LINE.format(
            nodes=stats.nodes, propagations=stats.propagations, seconds=stats.wall_time
        ),
        verbose,
    )
    if stats.limit_reached:
        progress("   ⚠️  Node limit reached", verbose)

    return {
        "search_result": result,
        "exit_code": 0 if result.assignment is not None else 1,
        "current_step": "search_complete",
    }
