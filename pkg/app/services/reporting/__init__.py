"""
Reporting Package
Trajectory sampling, run artifacts and summary tables
"""

from .artifacts import load_runs, read_run, read_trajectory, run_file_stem, write_run
from .tables import (
    comparison_table,
    convergence_table,
    final_error_table,
    render_tables,
    runs_frame,
    wdl_table,
)
from .trajectory import TrajectoryRecorder

__all__ = [
    "load_runs",
    "read_run",
    "read_trajectory",
    "run_file_stem",
    "write_run",
    "comparison_table",
    "convergence_table",
    "final_error_table",
    "render_tables",
    "runs_frame",
    "wdl_table",
    "TrajectoryRecorder",
]
