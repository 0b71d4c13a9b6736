"""
Solver Command Workflow - LangGraph

Load the instance, run one command, format the report.
"""

from typing import Literal

from langgraph.graph import END, StateGraph

from src.state.state import SolverState
from src.workflow.nodes import (
    audit_node,
    instance_loader_node,
    propagation_node,
    report_node,
    search_node,
)


def route_command(state: dict) -> Literal["propagate", "solve", "check", "report"]:
    """
    Conditional edge: dispatch on the command

    Load errors skip straight to the report.
    """
    if state.get("errors"):
        return "report"
    return state["command"]


def create_solver_graph():
    """
    Create the command workflow graph

    Workflow:
    1. Load the instance file and apply overrides
    2. Propagate, solve or check
    3. Format the report

    Returns:
        Compiled StateGraph ready for execution
    """
    workflow = StateGraph(SolverState)

    workflow.add_node("instance_loader", instance_loader_node)
    workflow.add_node("propagation", propagation_node)
    workflow.add_node("search", search_node)
    workflow.add_node("audit", audit_node)
    workflow.add_node("report", report_node)

    workflow.set_entry_point("instance_loader")

    workflow.add_conditional_edges(
        "instance_loader",
        route_command,
        {"propagate": "propagation", "solve": "search", "check": "audit", "report": "report"},
    )

    workflow.add_edge("propagation", "report")
    workflow.add_edge("search", "report")
    workflow.add_edge("audit", "report")
    workflow.add_edge("report", END)

    return workflow.compile()


def run_command(
    command: str,
    instance_path: str,
    overrides: dict | None = None,
    verbose: bool = False,
    propagator_factory=None,
) -> dict:
    """Run one command end to end; returns the final state"""
    app = create_solver_graph()
    initial_state = {
        "command": command,
        "instance_path": instance_path,
        "overrides": overrides,
        "verbose": verbose,
        "propagator_factory": propagator_factory,
        "model": None,
        "domains": None,
        "failure": None,
        "search_result": None,
        "audit": None,
        "report": None,
        "exit_code": None,
        "current_step": None,
        "errors": [],
    }
    return app.invoke(initial_state)
