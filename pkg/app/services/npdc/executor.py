"""
NPDC Executor
Initializes lambda lanes and runs barrier-synchronized iterations until the budget is spent
"""

import time
from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import ConfigurationException
from app.schemas.experiment import AlgorithmSpec
from app.schemas.run import RunRecord, TimingRecord
from app.services.npdc.chunking import VariableChunker
from app.services.npdc.lane import Lane, initial_lane, npdc_iteration
from app.services.problems.evaluator import EvaluationBudget, Evaluator
from app.services.problems.problem_factory import ObjectiveProblem
from app.services.reporting.trajectory import TrajectoryRecorder
from app.services.search_kernel import RngStream
from app.utils.algorithm_constants import AlgorithmKind, NPDCVariant, SpeedupMode
from app.utils.logging import get_logger

logger = get_logger(__name__)


def run_npdc(
    problem: ObjectiveProblem,
    budget: int,
    lanes: int = 1,
    seed: int = 0,
    workers: int = 1,
    variant: NPDCVariant = NPDCVariant.STANDARD,
    update_rejected: Optional[bool] = None,
    mode: Optional[SpeedupMode] = None,
    interval: Optional[int] = None,
    run_id: Optional[str] = None,
) -> RunRecord:
    """
    Run NPDC

    Lane i owns the stream keyed (seed, i): its first draw initializes the
    lane, then one block of D columns is drawn per iteration. Chunking the
    per-variable work across workers therefore never changes results.

    Args:
        problem: Objective
        budget: T, at least 2 * lanes
        lanes: lambda
        seed: Run seed
        workers: Chunks the per-variable work is split into
        variant: standard or random-meta
        update_rejected: Adapt variables whose offspring was rejected
            (default from settings)
        mode: simulated or threads (default from settings)
        interval: Trajectory checkpoint interval
        run_id: Identifier for the record

    Returns:
        RunRecord; final_error is min over lanes of FB minus f*

    Raises:
        ConfigurationException: For invalid arguments
    """
    variant = NPDCVariant(variant)
    if lanes < 1:
        raise ConfigurationException(f"lambda must be >= 1, got {lanes}")
    if workers < 1:
        raise ConfigurationException(f"workers must be >= 1, got {workers}")
    if budget < 2 * lanes:
        raise ConfigurationException(f"Budget {budget} must be >= 2 * lambda ({2 * lanes})")
    if update_rejected is None:
        update_rejected = settings.META_UPDATE_REJECTED
    mode = SpeedupMode(mode or settings.SPEEDUP_MODE)

    kind = AlgorithmKind.NPDC_RANDOM if variant == NPDCVariant.RANDOM_META else AlgorithmKind.NPDC
    label = AlgorithmSpec(kind=kind).label
    counter = EvaluationBudget(budget)
    evaluator = Evaluator(problem, counter)
    recorder = TrajectoryRecorder(problem.optimum_value, interval)
    root = RngStream.from_seed(seed)
    streams = [root.spawn(i) for i in range(lanes)]
    dimension = problem.dimension
    logger.info(
        f"Starting {label} on {problem.name} (seed={seed}, T={budget}, lambda={lanes}, workers={workers})"
    )

    start = time.perf_counter()
    population: List[Lane] = [
        initial_lane(i, evaluator, streams[i].uniform(dimension), variant) for i in range(lanes)
    ]
    recorder.record(counter.consumed, min(lane.fb for lane in population))

    rounds = 0
    with VariableChunker(dimension, workers, mode) as chunker:
        while not counter.exhausted:
            for i in range(lanes):
                if counter.exhausted:
                    break
                population[i] = npdc_iteration(
                    population[i],
                    evaluator,
                    streams[i].block(dimension),
                    chunker,
                    variant,
                    update_rejected,
                )
            rounds += 1
            recorder.record(counter.consumed, min(lane.fb for lane in population))
            if rounds % 1000 == 0:
                logger.debug(
                    f"{label} round {rounds}: best f={min(lane.fb for lane in population):.6e}"
                )
        total_time = time.perf_counter() - start
        simulated_time = chunker.parallel_time(total_time)

    recorder.close(counter.consumed)
    best_value = min(lane.fb for lane in population)
    final_error = problem.error(best_value)
    logger.info(
        f"Finished {label} on {problem.name} (seed={seed}): "
        f"{counter.consumed} evaluations, final error {final_error:.6e}"
    )

    return RunRecord(
        run_id=run_id or f"{label}-s{seed}",
        algo=label,
        problem=problem.name,
        seed=seed,
        config={
            "algorithm": {"kind": kind.value, "variant": variant.value, "update_rejected": update_rejected},
            "budget": budget,
            "lambda": lanes,
            "workers": workers,
        },
        trajectory=recorder.points(),
        final_error=final_error,
        consumed=counter.consumed,
        budget=budget,
        timing=TimingRecord(
            total_time=total_time,
            evaluation_time=evaluator.evaluation_time,
            simulated_time=simulated_time,
            iteration_count=sum(lane.iterations for lane in population),
            workers=workers,
        ),
        diagnostics={
            "meta_update_calls": float(sum(lane.meta_updates for lane in population)),
            "rounds": float(rounds),
        },
    )
