from .automaton import NO_TRANSITION, Dfa, Transition
from .flow import Arc, Flow, FlowNetwork, ResidualArc, ResidualGraph, ShortestPath
from .gcc import (
    CardinalityInterval,
    GccBounds,
    MeasureKind,
    ValueCounts,
    ViolationMeasure,
)
from .model import (
    ConstraintSpec,
    Model,
    SearchResult,
    SearchStatistics,
    SearchStatus,
    SgcaSpec,
    SoftGccSpec,
    SoftRegularSpec,
    Variable,
)
from .regular import EditWeights, LayerArc, LayeredGraph, RegularMeasure

__all__ = [
    # Flow models
    "Arc",
    "FlowNetwork",
    "Flow",
    "ResidualArc",
    "ResidualGraph",
    "ShortestPath",
    # Automaton models
    "Dfa",
    "Transition",
    "NO_TRANSITION",
    # Cardinality models
    "CardinalityInterval",
    "GccBounds",
    "ValueCounts",
    "MeasureKind",
    "ViolationMeasure",
    # Regular models
    "EditWeights",
    "LayerArc",
    "LayeredGraph",
    "RegularMeasure",
    # Model and search
    "Variable",
    "SoftGccSpec",
    "SoftRegularSpec",
    "SgcaSpec",
    "ConstraintSpec",
    "Model",
    "SearchStatus",
    "SearchStatistics",
    "SearchResult",
]
