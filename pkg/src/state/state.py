import operator
from collections.abc import Callable
from typing import Annotated, TypedDict

from src.data_models import Model, SearchResult


class SolverState(TypedDict):
    """State that flows through the command workflow"""

    command: str  # propagate | solve | check
    instance_path: str
    overrides: dict | None
    verbose: bool
    propagator_factory: Callable | None

    model: Model | None

    domains: dict[str, list] | None
    failure: str | None
    search_result: SearchResult | None
    audit: dict | None

    report: str | None
    exit_code: int | None

    current_step: str | None
    errors: Annotated[list[str], operator.add]
