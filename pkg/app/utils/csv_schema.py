"""
Artifact Schema Constants
Fixed column sets and file names of every emitted artifact
"""

from typing import List

RUNS_DIR = "runs"
TABLES_DIR = "tables"
DESCRIPTOR_FILE = "problem.env"

TRAJECTORY_SUFFIX = ".csv"
SUMMARY_SUFFIX = ".json"

TRAJECTORY_COLUMNS: List[str] = ["run_id", "algo", "problem", "seed", "evaluations", "best_error"]

SUMMARY_COLUMNS: List[str] = ["problem", "algo_a", "algo_b", "mean_a", "mean_b", "p_value", "verdict"]

FINAL_ERROR_COLUMNS: List[str] = [
    "problem",
    "algo",
    "runs",
    "failed",
    "mean_final_error",
    "std_final_error",
    "mean_consumed",
]

CONVERGENCE_COLUMNS: List[str] = ["problem", "algo", "evaluations", "mean_best_error"]

WDL_COLUMNS: List[str] = ["algo_a", "algo_b", "wins", "draws", "losses"]

SPEEDUP_COLUMNS: List[str] = [
    "workers",
    "wall_time",
    "evaluation_time",
    "parallel_time",
    "measured_speedup",
    "model_speedup",
    "fe_fraction",
]

FINAL_ERROR_TABLE = "final_errors.csv"
COMPARISON_TABLE = "comparisons.csv"
CONVERGENCE_TABLE = "convergence.csv"
WDL_TABLE = "wdl.csv"
SPEEDUP_TABLE = "speedup.csv"
