"""
Instance Loader Node

Reads the instance file and applies the command-line overrides.
"""

from config.templates import GUARD_LINE, SYNTAX_ERROR_LINE
from src.tools.instance_parser import apply_overrides, load_instance
from src.utils.errors import InstanceSyntaxError, RejectedInputError
from src.utils.utils import progress


def instance_loader_node(state: dict) -> dict:
    """LangGraph node: instance file -> Model"""
    path = state["instance_path"]
    progress(f"📄 Loading {path}...", state.get("verbose", False))

    try:
        model = load_instance(path)
        overrides = state.get("overrides") or {}
        if any(v is not None for v in overrides.values()):
            model = apply_overrides(model, **overrides)
    except InstanceSyntaxError as exc:
        return {
            "errors": [
                SYNTAX_ERROR_LINE.format(path=path, line=exc.line, column=exc.column, message=exc.message)
            ],
            "exit_code": 2,
            "current_step": "load_failed",
        }
    except (RejectedInputError, OSError) as exc:
        return {
            "errors": [GUARD_LINE.format(message=exc)],
            "exit_code": 2,
            "current_step": "load_failed",
        }

    progress(
        f"   ✓ {len(model.variables)} variables, {len(model.constraints)} constraints",
        state.get("verbose", False),
    )
    return {"model": model, "current_step": "instance_loaded"}
