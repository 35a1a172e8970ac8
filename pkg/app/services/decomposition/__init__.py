"""
Decomposition Package
Variable groupings and the strategies that produce them
"""

from .grouping import Grouping
from .strategies import (
    differential_grouping,
    interaction_deltas,
    natural_grouping,
    probe_evaluations,
    random_grouping,
)

__all__ = [
    "Grouping",
    "differential_grouping",
    "interaction_deltas",
    "natural_grouping",
    "probe_evaluations",
    "random_grouping",
]
