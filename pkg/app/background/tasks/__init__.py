"""
Background Tasks Module
Experiment execution and speed-up measurement
"""

from .experiment_runner import execute_run, prepare_problem, run_experiment, run_id_for
from .speedup_sweep import speedup_sweep

__all__ = [
    "execute_run",
    "prepare_problem",
    "run_experiment",
    "run_id_for",
    "speedup_sweep",
]
