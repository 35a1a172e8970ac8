"""
Schemas package initialization
"""

from app.schemas.analysis import (
    ComparisonRow,
    DivergenceParams,
    RankSumResult,
    SpeedupParams,
    SpeedupRow,
    WDLSummary,
)
from app.schemas.experiment import AlgorithmSpec, ExperimentConfig
from app.schemas.problem import ProblemDescriptor
from app.schemas.run import RunRecord, TimingRecord, TrajectoryPoint

__all__ = [
    "ComparisonRow",
    "DivergenceParams",
    "RankSumResult",
    "SpeedupParams",
    "SpeedupRow",
    "WDLSummary",
    "AlgorithmSpec",
    "ExperimentConfig",
    "ProblemDescriptor",
    "RunRecord",
    "TimingRecord",
    "TrajectoryPoint",
]
