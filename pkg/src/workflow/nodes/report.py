"""
Report Node

Formats the stdout report of the command: one line per fact, declaration
order, so reports diff cleanly.
"""

from config.templates import (
    ASSIGN_LINE,
    BOUNDS_LINE,
    DOMAIN_LINE,
    FAIL_LINE,
    MATCH_LINE,
    OBJECTIVE_LINE,
    STATUS_LINE,
)
from src.data_models import Model, SearchResult
from src.utils.utils import format_values


def propagation_report(model: Model, domains: dict[str, list] | None, failure: str | None) -> list[str]:
    if failure is not None:
        return [FAIL_LINE.format(reason=failure)]
    costs = set(model.cost_variables)
    lines = []
    for variable in model.variables:
        values = domains[variable.name]
        if variable.name in costs:
            lines.append(BOUNDS_LINE.format(name=variable.name, low=min(values), high=max(values)))
        else:
            lines.append(DOMAIN_LINE.format(name=variable.name, values=format_values(values)))
    return lines


def search_report(model: Model, result: SearchResult) -> list[str]:
    lines = [STATUS_LINE.format(status=result.status.value)]
    if result.assignment is None:
        return lines
    lines.append(OBJECTIVE_LINE.format(value=result.objective))
    for variable in model.variables:
        lines.append(ASSIGN_LINE.format(name=variable.name, value=result.assignment[variable.name]))
    return lines


def report_node(state: dict) -> dict:
    """LangGraph node: final report text"""
    if state.get("errors"):
        return {"report": "", "current_step": "report_complete"}

    command = state["command"]
    if command == "propagate":
        lines = propagation_report(state["model"], state.get("domains"), state.get("failure"))
    elif command == "solve":
        lines = search_report(state["model"], state["search_result"])
    else:
        audit = state["audit"]
        lines = [MATCH_LINE] if audit["match"] else audit["counterexample"]

    return {"report": "\n".join(lines) + "\n", "current_step": "report_complete"}
