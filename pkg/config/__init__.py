from .settings import Settings, settings
from .templates import (
    ASSIGN_LINE,
    BOUNDS_LINE,
    DOMAIN_LINE,
    OBJECTIVE_LINE,
)

__all__ = [
    "Settings",
    "settings",
    "DOMAIN_LINE",
    "BOUNDS_LINE",
    "OBJECTIVE_LINE",
    "ASSIGN_LINE",
]
