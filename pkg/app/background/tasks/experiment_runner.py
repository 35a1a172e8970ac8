"""
Experiment Runner Task
Executes the seeded repetitions of one configuration in concurrent batches
"""

import asyncio
import time
from pathlib import Path
from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import ConfigurationException
from app.schemas.experiment import ExperimentConfig
from app.schemas.run import RunRecord
from app.services.cc import run_cc
from app.services.decomposition import probe_evaluations
from app.services.npdc import run_npdc
from app.services.problems import ObjectiveProblem, build_problem, save_descriptor
from app.services.reporting import write_run
from app.utils.algorithm_constants import AlgorithmKind, GroupingStrategy, RunStatus
from app.utils.csv_schema import DESCRIPTOR_FILE, RUNS_DIR
from app.utils.logging import get_logger

logger = get_logger(__name__)


def run_id_for(config: ExperimentConfig, run_index: int) -> str:
    """Stable id: <algo>__<problem>__r<index>"""
    return f"{config.algorithm.label}__{config.problem.name}__r{run_index:03d}"


def prepare_problem(config: ExperimentConfig) -> ObjectiveProblem:
    """
    Build the problem and reject configurations no run could execute

    Raises:
        ConfigurationException: If the algorithm cannot run within the budget
    """
    problem = build_problem(config.problem)
    if config.evaluation_delay > 0:
        problem = problem.with_evaluation_delay(config.evaluation_delay)

    algorithm = config.algorithm
    if algorithm.kind == AlgorithmKind.CC:
        if config.budget < problem.dimension:
            raise ConfigurationException(
                f"CC needs a budget of at least D={problem.dimension}, got {config.budget}"
            )
        if algorithm.grouping == GroupingStrategy.DIFFERENTIAL:
            probes = probe_evaluations(problem.dimension)
            if config.budget <= probes + 1:
                raise ConfigurationException(
                    f"Budget {config.budget} cannot cover {probes} grouping probes"
                )
        if algorithm.grouping == GroupingStrategy.RANDOM:
            count = algorithm.group_count or settings.RANDOM_GROUP_COUNT
            if problem.dimension % count != 0:
                raise ConfigurationException(
                    f"Random grouping needs M to divide D (D={problem.dimension}, M={count})"
                )
    return problem


def execute_run(config: ExperimentConfig, problem: ObjectiveProblem, run_index: int) -> RunRecord:
    """Run one repetition synchronously"""
    algorithm = config.algorithm
    seed = config.seed_for(run_index)
    run_id = run_id_for(config, run_index)

    if algorithm.kind == AlgorithmKind.CC:
        record = run_cc(
            problem,
            algorithm.grouping,
            algorithm.workflow,
            config.budget,
            seed,
            workers=config.workers,
            group_count=algorithm.group_count,
            order=algorithm.order,
            epsilon=algorithm.epsilon,
            run_id=run_id,
        )
    else:
        record = run_npdc(
            problem,
            config.budget,
            lanes=config.lanes,
            seed=seed,
            workers=config.workers,
            variant=algorithm.variant,
            update_rejected=algorithm.update_rejected,
            run_id=run_id,
        )
    record.config = {**config.echo(), **record.config, "run_index": run_index}
    return record


def failed_record(config: ExperimentConfig, run_index: int, error: BaseException) -> RunRecord:
    return RunRecord(
        run_id=run_id_for(config, run_index),
        algo=config.algorithm.label,
        problem=config.problem.name,
        seed=config.seed_for(run_index),
        config={**config.echo(), "run_index": run_index},
        budget=config.budget,
        status=RunStatus.FAILED,
        error=f"{type(error).__name__}: {str(error)}",
    )


async def run_repetition(
    config: ExperimentConfig,
    problem: ObjectiveProblem,
    run_index: int,
) -> RunRecord:
    """
    Run one repetition off the event loop

    Algorithm errors are caught and returned as a failed record.
    """
    try:
        return await asyncio.to_thread(execute_run, config, problem, run_index)
    except Exception as e:
        logger.error(f"Error in run {run_id_for(config, run_index)}: {str(e)}")
        return failed_record(config, run_index, e)


async def run_experiment(
    config: ExperimentConfig,
    batch_size: Optional[int] = None,
    write: bool = True,
) -> List[RunRecord]:
    """
    Execute all repetitions of a configuration

    Args:
        config: Validated configuration
        batch_size: Repetitions run concurrently (default from settings)
        write: Persist one trajectory CSV and one JSON summary per run

    Returns:
        Run records ordered by run index

    Raises:
        ConfigurationException: If the configuration cannot run
        ArtifactIOException: If artifacts cannot be written
    """
    batch_size = batch_size or settings.EXPERIMENT_BATCH_SIZE
    problem = prepare_problem(config)
    output = Path(config.output_dir)
    runs_dir = output / RUNS_DIR
    if write:
        save_descriptor(config.problem, output / DESCRIPTOR_FILE)

    start_time = time.perf_counter()
    records: List[RunRecord] = []
    failures = 0
    logger.info(
        f"Starting experiment {config.algorithm.label} on {config.problem.name}: "
        f"{config.repetitions} runs, T={config.budget}"
    )

    for first in range(0, config.repetitions, batch_size):
        indices = range(first, min(first + batch_size, config.repetitions))
        results = await asyncio.gather(*[run_repetition(config, problem, i) for i in indices])

        for record in results:
            if not record.succeeded:
                failures += 1
            if write:
                write_run(record, runs_dir)
            records.append(record)

        logger.info(
            f"Progress: {len(records)}/{config.repetitions} runs (Failed: {failures})"
        )

    execution_time = time.perf_counter() - start_time
    logger.info(
        f"Experiment complete in {execution_time:.1f}s: "
        f"{len(records) - failures} succeeded, {failures} failed"
    )
    return records
