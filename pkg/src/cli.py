"""
Command Surface

propagate / solve / check on an instance file. The report goes to stdout,
diagnostics to stderr. Exit codes: 0 consistent / solved / match,
1 fail / infeasible / counterexample, 2 unreadable input or size guard.
"""

import sys

from src.engine import PropagatorFactory
from src.workflow.graph.graph_builder import run_command


def _run(
    command: str,
    path: str,
    overrides: dict | None,
    verbose: bool,
    propagator_factory: PropagatorFactory | None = None,
) -> int:
    state = run_command(command, path, overrides, verbose, propagator_factory)
    for error in state.get("errors", []):
        print(error, file=sys.stderr)
    if state.get("report"):
        sys.stdout.write(state["report"])
    return state["exit_code"]


def cmd_propagate(path: str, overrides: dict | None = None, verbose: bool = False) -> int:
    return _run("propagate", path, overrides, verbose)


def cmd_solve(path: str, overrides: dict | None = None, verbose: bool = False) -> int:
    return _run("solve", path, overrides, verbose)


def cmd_check(
    path: str,
    overrides: dict | None = None,
    verbose: bool = False,
    propagator_factory: PropagatorFactory | None = None,
) -> int:
    """`propagator_factory` replaces the production propagators under audit"""
    return _run("check", path, overrides, verbose, propagator_factory)


COMMANDS = {"propagate": cmd_propagate, "solve": cmd_solve, "check": cmd_check}
