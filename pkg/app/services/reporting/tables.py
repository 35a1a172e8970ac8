"""
Table Rendering
Aggregates run directories into final-error, comparison, w-d-l and convergence tables
"""

from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from app.core.config import settings
from app.core.exceptions import ArtifactIOException, InsufficientDataException
from app.schemas.run import RunRecord
from app.services.analysis import compare, mean_curve, wdl_summary
from app.services.reporting.artifacts import load_runs
from app.utils.csv_schema import (
    COMPARISON_TABLE,
    CONVERGENCE_COLUMNS,
    CONVERGENCE_TABLE,
    FINAL_ERROR_COLUMNS,
    FINAL_ERROR_TABLE,
    SUMMARY_COLUMNS,
    TABLES_DIR,
    WDL_COLUMNS,
    WDL_TABLE,
)
from app.utils.logging import get_logger

logger = get_logger(__name__)


def runs_frame(records: List[RunRecord]) -> pd.DataFrame:
    """One row per run"""
    return pd.DataFrame([
        {
            "run_id": r.run_id,
            "problem": r.problem,
            "algo": r.algo,
            "seed": r.seed,
            "status": r.status.value,
            "final_error": r.final_error,
            "consumed": r.consumed,
        }
        for r in records
    ])


def final_error_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean and std of final errors per (problem, algo)"""
    rows = []
    for (problem, algo), group in frame.groupby(["problem", "algo"], sort=True):
        done = group[group["status"] == "completed"]
        errors = done["final_error"].astype(float)
        rows.append({
            "problem": problem,
            "algo": algo,
            "runs": int(len(done)),
            "failed": int(len(group) - len(done)),
            "mean_final_error": float(errors.mean()) if len(done) else float("nan"),
            "std_final_error": float(errors.std(ddof=0)) if len(done) else float("nan"),
            "mean_consumed": float(done["consumed"].mean()) if len(done) else float("nan"),
        })
    return pd.DataFrame(rows, columns=FINAL_ERROR_COLUMNS)


def _samples(frame: pd.DataFrame) -> Dict[str, Dict[str, List[float]]]:
    """problem -> algo -> final errors of completed runs, ordered by seed"""
    done = frame[frame["status"] == "completed"].sort_values(["problem", "algo", "seed"])
    samples: Dict[str, Dict[str, List[float]]] = {}
    for (problem, algo), group in done.groupby(["problem", "algo"], sort=True):
        samples.setdefault(problem, {})[algo] = group["final_error"].astype(float).tolist()
    return samples


def comparison_table(frame: pd.DataFrame, alpha: Optional[float] = None) -> pd.DataFrame:
    """Rank-sum comparison of every algorithm pair on every problem"""
    rows = []
    for problem, by_algo in sorted(_samples(frame).items()):
        for algo_a, algo_b in combinations(sorted(by_algo), 2):
            row = compare(problem, algo_a, by_algo[algo_a], algo_b, by_algo[algo_b], alpha)
            rows.append(row.model_dump())
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def wdl_table(frame: pd.DataFrame, alpha: Optional[float] = None) -> pd.DataFrame:
    """Win/draw/loss counts of each algorithm against each other one over shared problems"""
    samples = _samples(frame)
    algos = sorted({algo for by_algo in samples.values() for algo in by_algo})
    rows = []
    for algo_a in algos:
        for algo_b in algos:
            if algo_a == algo_b:
                continue
            paired = {
                problem: (by_algo[algo_a], by_algo[algo_b])
                for problem, by_algo in sorted(samples.items())
                if algo_a in by_algo and algo_b in by_algo
            }
            if not paired:
                continue
            summary = wdl_summary(paired, alpha)
            rows.append({"algo_a": algo_a, "algo_b": algo_b, **summary.model_dump()})
    return pd.DataFrame(rows, columns=WDL_COLUMNS)


def convergence_table(records: List[RunRecord]) -> pd.DataFrame:
    """Mean best-error curve per (problem, algo) on the union of evaluation counts"""
    grouped: Dict[tuple, List[RunRecord]] = {}
    for record in records:
        if record.succeeded and record.trajectory:
            grouped.setdefault((record.problem, record.algo), []).append(record)
    rows = []
    for (problem, algo), runs in sorted(grouped.items()):
        for point in mean_curve([r.trajectory for r in runs]):
            rows.append({
                "problem": problem,
                "algo": algo,
                "evaluations": point.evaluations,
                "mean_best_error": point.best_error,
            })
    return pd.DataFrame(rows, columns=CONVERGENCE_COLUMNS)


def render_tables(
    run_directory: Union[str, Path],
    output_directory: Optional[Union[str, Path]] = None,
    alpha: Optional[float] = None,
) -> Dict[str, Path]:
    """
    Aggregate every run below `run_directory` into summary CSV files

    Args:
        run_directory: Experiment directory (or its runs/ folder)
        output_directory: Where tables go; defaults to <run_directory>/tables
        alpha: Significance level for verdicts

    Returns:
        Table name -> written path

    Raises:
        InsufficientDataException: If no run records are found
    """
    alpha = settings.SIGNIFICANCE_LEVEL if alpha is None else alpha
    records = load_runs(run_directory)
    if not records:
        raise InsufficientDataException(f"No run records found in {run_directory}")

    frame = runs_frame(records)
    tables = {
        FINAL_ERROR_TABLE: final_error_table(frame),
        COMPARISON_TABLE: comparison_table(frame, alpha),
        WDL_TABLE: wdl_table(frame, alpha),
        CONVERGENCE_TABLE: convergence_table(records),
    }

    target = Path(output_directory) if output_directory else Path(run_directory) / TABLES_DIR
    written: Dict[str, Path] = {}
    try:
        target.mkdir(parents=True, exist_ok=True)
        for name, table in tables.items():
            path = target / name
            table.to_csv(path, index=False)
            written[name] = path
    except OSError as e:
        logger.error(f"Error writing tables to {target}: {str(e)}")
        raise ArtifactIOException(f"Failed to write tables: {str(e)}")

    logger.info(f"Rendered {len(written)} tables from {len(records)} runs into {target}")
    return written
