from .errors import (
    EmptyLanguageError,
    InfeasibleError,
    InstanceSyntaxError,
    MeasureUndefinedError,
    NoPathError,
    NoWordOfThisLengthError,
    PropagationFailure,
    RejectedInputError,
    SoftConstraintError,
    UnreachableError,
)
from .utils import Value, format_values, parse_value, sorted_values, value_sort_key

__all__ = [
    "SoftConstraintError",
    "RejectedInputError",
    "InstanceSyntaxError",
    "InfeasibleError",
    "UnreachableError",
    "NoWordOfThisLengthError",
    "EmptyLanguageError",
    "NoPathError",
    "MeasureUndefinedError",
    "PropagationFailure",
    "Value",
    "format_values",
    "parse_value",
    "sorted_values",
    "value_sort_key",
]
