from .layered_graph import (
    FlatGraph,
    GraphDescription,
    GraphVariant,
    InterLayer,
    Layer,
    LayeredGraph,
    classify,
    flatten,
    validate,
)
from .outcome import ProblemKind, SolveMode, SolveOutcome

__all__ = [
    "FlatGraph", "GraphDescription", "GraphVariant", "InterLayer", "Layer", "LayeredGraph",
    "classify", "flatten", "validate",
    "ProblemKind", "SolveMode", "SolveOutcome",
]
