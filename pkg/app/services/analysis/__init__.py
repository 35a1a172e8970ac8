"""
Analysis Package
Divergence and speed-up models, rank-sum statistics and convergence aggregation
"""

from .convergence import align_trajectories, common_grid, mean_curve
from .divergence import (
    div_parallel,
    div_serial,
    gap_ratio,
    parallel_events,
    serial_events,
    simulate_divergence,
)
from .speedup import measured_speedup, speedup_curve, speedup_model
from .statistics import compare, rank_sum_test, verdict, wdl_summary

__all__ = [
    "align_trajectories",
    "common_grid",
    "mean_curve",
    "div_parallel",
    "div_serial",
    "gap_ratio",
    "parallel_events",
    "serial_events",
    "simulate_divergence",
    "measured_speedup",
    "speedup_curve",
    "speedup_model",
    "compare",
    "rank_sum_test",
    "verdict",
    "wdl_summary",
]
