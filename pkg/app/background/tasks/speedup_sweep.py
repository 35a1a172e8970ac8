"""
Speed-up Sweep Task
Measures NPDC time across worker counts against the ideal speed-up model
"""

import asyncio
from pathlib import Path
from statistics import fmean
from typing import Dict, List, Optional, Sequence

import pandas as pd

from app.background.tasks.experiment_runner import prepare_problem
from app.core.config import settings
from app.core.exceptions import ArtifactIOException, ConfigurationException, ValidationException
from app.schemas.analysis import SpeedupParams, SpeedupRow
from app.schemas.experiment import ExperimentConfig
from app.schemas.run import RunRecord
from app.services.analysis import measured_speedup, speedup_model
from app.services.npdc import run_npdc
from app.utils.algorithm_constants import AlgorithmKind, SpeedupMode
from app.utils.csv_schema import SPEEDUP_COLUMNS, SPEEDUP_TABLE
from app.utils.logging import get_logger

logger = get_logger(__name__)


def parallel_time(record: RunRecord, mode: SpeedupMode) -> float:
    """The time a speed-up is measured on"""
    if mode == SpeedupMode.SIMULATED and record.timing.simulated_time is not None:
        return record.timing.simulated_time
    return record.timing.total_time


async def speedup_sweep(
    config: ExperimentConfig,
    worker_counts: Sequence[int],
    mode: Optional[SpeedupMode] = None,
    write: bool = True,
) -> List[SpeedupRow]:
    """
    Time NPDC at every worker count

    Runs are executed one at a time so that timings do not interfere.
    T_1 and the evaluation share fe = T_FE / T_1 come from the single-worker
    runs; every row compares T_1 / T_N with N / (1 + fe (N - 1)).

    Args:
        config: NPDC configuration; repetitions are averaged per worker count
        worker_counts: Must contain 1
        mode: simulated or threads (default from settings)
        write: Emit speedup.csv in the output directory

    Returns:
        One row per worker count, ascending

    Raises:
        ValidationException: If 1 is not among the worker counts
        ConfigurationException: If the algorithm is not NPDC
    """
    counts = sorted(set(int(n) for n in worker_counts))
    if 1 not in counts:
        raise ValidationException("worker_counts must contain 1")
    if any(n < 1 for n in counts):
        raise ValidationException(f"Worker counts must be >= 1, got {counts}")
    if config.algorithm.kind == AlgorithmKind.CC:
        raise ConfigurationException("Speed-up sweeps run NPDC configurations only")
    mode = SpeedupMode(mode or settings.SPEEDUP_MODE)

    problem = prepare_problem(config)
    measurements: Dict[int, List[RunRecord]] = {}
    for workers in counts:
        records = []
        for run_index in range(config.repetitions):
            record = await asyncio.to_thread(
                run_npdc,
                problem,
                config.budget,
                config.lanes,
                config.seed_for(run_index),
                workers,
                config.algorithm.variant,
                config.algorithm.update_rejected,
                mode,
            )
            records.append(record)
        measurements[workers] = records
        logger.info(
            f"Speed-up sweep: {workers} workers, "
            f"mean time {fmean(parallel_time(r, mode) for r in records):.3f}s"
        )

    t_one = fmean(parallel_time(r, mode) for r in measurements[1])
    fe_fraction = 0.0
    if t_one > 0:
        fe_fraction = min(1.0, fmean(r.timing.evaluation_time for r in measurements[1]) / t_one)

    rows = []
    for workers in counts:
        records = measurements[workers]
        t_n = t_one if workers == 1 else fmean(parallel_time(r, mode) for r in records)
        rows.append(SpeedupRow(
            workers=workers,
            wall_time=fmean(r.timing.total_time for r in records),
            evaluation_time=fmean(r.timing.evaluation_time for r in records),
            parallel_time=t_n,
            measured_speedup=measured_speedup(t_one, t_n) if t_n > 0 else 1.0,
            model_speedup=speedup_model(SpeedupParams(processors=workers, fe_fraction=fe_fraction)),
            fe_fraction=fe_fraction,
        ))

    if write:
        target = Path(config.output_dir) / SPEEDUP_TABLE
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            pd.DataFrame([row.model_dump() for row in rows], columns=SPEEDUP_COLUMNS).to_csv(target, index=False)
        except OSError as e:
            logger.error(f"Error writing speed-up table: {str(e)}")
            raise ArtifactIOException(f"Failed to write {target}: {str(e)}")
        logger.info(f"Speed-up table written to {target}")
    return rows
