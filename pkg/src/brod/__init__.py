"""Best-response opinion dynamics: operator, simulation, structural checks, sweeps."""

from .best_response import BestResponseResult, Regime, best_response, best_response_agent, cost
from .core import (
    Digraph,
    InfluenceMatrix,
    ModelParams,
    ValidationError,
    as_opinions,
    example1,
    row_normalize,
    validate_influence_matrix,
)
from .dynamics import Status, TrajectoryResult, simulate, step

__all__ = [
    "BestResponseResult", "Regime", "best_response", "best_response_agent", "cost",
    "Digraph", "InfluenceMatrix", "ModelParams", "ValidationError", "as_opinions",
    "example1", "row_normalize", "validate_influence_matrix",
    "Status", "TrajectoryResult", "simulate", "step",
]
