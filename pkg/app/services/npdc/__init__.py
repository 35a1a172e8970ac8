"""
NPDC Package
Meta-model gated (1+1) lanes and the barrier-synchronized executor
"""

from .chunking import VariableChunker
from .executor import run_npdc
from .lane import Lane, initial_lane, npdc_iteration
from .meta_model import (
    MetaModelState,
    OffspringSide,
    meta_select,
    meta_update,
    offspring_side,
    probability_floor,
)

__all__ = [
    "VariableChunker",
    "run_npdc",
    "Lane",
    "initial_lane",
    "npdc_iteration",
    "MetaModelState",
    "OffspringSide",
    "meta_select",
    "meta_update",
    "offspring_side",
    "probability_floor",
]
