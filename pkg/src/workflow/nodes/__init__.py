"""
Command Workflow Nodes

All node functions for the LangGraph workflow.
"""

from .audit import audit_node
from .instance_loader import instance_loader_node
from .propagation import propagation_node
from .report import report_node
from .search import search_node

__all__ = [
    "instance_loader_node",
    "propagation_node",
    "search_node",
    "audit_node",
    "report_node",
]
