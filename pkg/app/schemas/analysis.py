"""
Analysis Schemas
Pydantic v2 models for model parameters and summary rows
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class DivergenceParams(BaseModel):
    """Per-iteration retention probability and group count"""
    model_config = ConfigDict(frozen=True)

    p: float = Field(..., ge=0, le=1, description="Probability the best is retained")
    groups: int = Field(..., ge=1, description="M")


class SpeedupParams(BaseModel):
    """Processor count and the evaluation share of single-processor time"""
    model_config = ConfigDict(frozen=True)

    processors: int = Field(..., ge=1, description="N")
    fe_fraction: float = Field(..., ge=0, le=1, description="T_FE / T_1")


class RankSumResult(BaseModel):
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) outcome"""
    model_config = ConfigDict(frozen=True)

    statistic: float = Field(..., ge=0, description="U of the first sample")
    p_value: float = Field(..., ge=0, le=1)
    method: Literal["exact", "normal", "degenerate"]


class WDLSummary(BaseModel):
    wins: int = 0
    draws: int = 0
    losses: int = 0

    def as_tuple(self):
        return (self.wins, self.draws, self.losses)


class ComparisonRow(BaseModel):
    """One pairwise comparison on one problem"""
    problem: str
    algo_a: str
    algo_b: str
    mean_a: float
    mean_b: float
    p_value: float = Field(..., ge=0, le=1)
    verdict: Literal["win", "draw", "loss"]


class SpeedupRow(BaseModel):
    """One worker count of a speed-up sweep"""
    workers: int = Field(..., ge=1)
    wall_time: float = Field(..., ge=0)
    evaluation_time: float = Field(..., ge=0)
    parallel_time: float = Field(..., ge=0, description="Time the speed-up is measured on")
    measured_speedup: float = Field(..., ge=0)
    model_speedup: float = Field(..., ge=0)
    fe_fraction: float = Field(..., ge=0, le=1)
