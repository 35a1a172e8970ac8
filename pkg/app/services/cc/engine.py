"""
Cooperative Coevolution Engine
Serial and stale-parallel context-vector workflows for the DC baselines
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Protocol, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import ConfigurationException, ValidationException
from app.schemas.experiment import AlgorithmSpec
from app.schemas.run import RunRecord, TimingRecord
from app.services.cc.context import ContextVector, SubproblemState, evaluate_partial, splice
from app.services.decomposition import (
    Grouping,
    differential_grouping,
    natural_grouping,
    probe_evaluations,
    random_grouping,
)
from app.services.problems.evaluator import EvaluationBudget, Evaluator
from app.services.problems.problem_factory import ObjectiveProblem, true_interaction_groups
from app.services.reporting.trajectory import TrajectoryRecorder
from app.services.search_kernel import (
    INITIAL_SIGMA,
    DrawBlock,
    RngStream,
    mutate,
    update_sigma,
)
from app.utils.algorithm_constants import (
    AlgorithmKind,
    GroupingStrategy,
    GroupOrder,
    Workflow,
)
from app.utils.logging import get_logger

logger = get_logger(__name__)

# Sub-stream keys below the run seed
INIT_STREAM = 0
GROUPING_STREAM = 1
DRAW_STREAM = 2
ORDER_STREAM = 3


class DrawSource(Protocol):
    def block(self, size: int) -> DrawBlock:
        ...


@dataclass
class CCStepResult:
    """States and merged solution after one outer iteration"""
    states: List[SubproblemState]
    merged: np.ndarray
    merged_value: float
    processed: int
    accepted: int
    contexts: List[ContextVector] = field(default_factory=list)
    group_times: List[float] = field(default_factory=list)
    merge_evaluated: bool = False  # Barrier merge of several groups was scored with a charged evaluation


def _slots(states: Sequence[SubproblemState], order: Sequence[int]) -> List[Tuple[int, slice]]:
    """Draw columns per processing position"""
    slots = []
    offset = 0
    for position in order:
        size = len(states[position].group)
        slots.append((position, slice(offset, offset + size)))
        offset += size
    return slots


def _mutant(state: SubproblemState, problem: ObjectiveProblem, draws: DrawBlock, cols: slice) -> np.ndarray:
    group = state.group
    return mutate(
        state.best,
        state.sigma,
        draws.choice[cols],
        draws.normal[cols],
        draws.cauchy[cols],
        problem.lower[group],
        problem.upper[group],
    )


def cc_step_serial(
    states: List[SubproblemState],
    evaluator: Evaluator,
    draws: DrawBlock,
    merged: np.ndarray,
    merged_value: float,
    order: Optional[Sequence[int]] = None,
) -> CCStepResult:
    """
    One serial sweep: each group sees the bests already updated in this sweep

    Args:
        states: One state per group; `merged` is their splice
        evaluator: Charged once per processed group
        draws: D columns, consumed in processing order
        merged: Current merged solution
        merged_value: f(merged)
        order: Processing order of group positions (default ascending)

    Returns:
        CCStepResult; when the budget runs short only the first groups in
        order are processed
    """
    order = list(range(len(states))) if order is None else list(order)
    granted = evaluator.budget.grant(len(order))
    problem = evaluator.problem
    updated = list(states)
    contexts: List[ContextVector] = []
    accepted = 0

    for step, (position, cols) in enumerate(_slots(states, order)[:granted]):
        state = updated[position]
        mutant = _mutant(state, problem, draws, cols)
        context = ContextVector(merged, fresh_through=step, group_count=len(states))
        contexts.append(context)
        value = evaluate_partial(evaluator, context, state.group, mutant)

        moved = bool(np.any(mutant != state.best))
        success = value < merged_value
        sigma = update_sigma(state.sigma, moved, success)
        if success:
            merged = splice(merged, state.group, mutant)
            merged_value = value
            updated[position] = replace(state, best=mutant, sigma=sigma, value=value)
            accepted += 1
        else:
            updated[position] = replace(state, sigma=sigma)

    return CCStepResult(
        states=updated,
        merged=merged,
        merged_value=merged_value,
        processed=granted,
        accepted=accepted,
        contexts=contexts,
    )


def cc_step_parallel(
    states: List[SubproblemState],
    evaluator: Evaluator,
    draws: DrawBlock,
    merged: np.ndarray,
    merged_value: float,
    order: Optional[Sequence[int]] = None,
    pool: Optional[ThreadPoolExecutor] = None,
) -> CCStepResult:
    """
    One stale-parallel sweep: every group sees the previous barrier's bests

    Groups are independent work items and may run on `pool`; results are
    merged in processing order at the barrier, so the outcome does not
    depend on the worker count. Merging two or more accepted groups costs
    one more charged evaluation; without one, only the best accepted group
    is merged.
    """
    order = list(range(len(states))) if order is None else list(order)
    granted = evaluator.budget.grant(len(order))
    problem = evaluator.problem
    frozen = ContextVector(np.array(merged, copy=True), fresh_through=0, group_count=len(states))
    incumbent = merged_value
    work = _slots(states, order)[:granted]

    def process(item: Tuple[int, slice]):
        position, cols = item
        state = states[position]
        start = time.perf_counter()
        mutant = _mutant(state, problem, draws, cols)
        value = evaluate_partial(evaluator, frozen, state.group, mutant)
        return position, mutant, value, time.perf_counter() - start

    if pool is not None and len(work) > 1:
        results = list(pool.map(process, work))
    else:
        results = [process(item) for item in work]

    # Barrier
    updated = list(states)
    new_merged = np.array(merged, copy=True)
    accepted: List[Tuple[int, float]] = []
    for position, mutant, value, _ in results:
        state = updated[position]
        moved = bool(np.any(mutant != state.best))
        success = value < incumbent
        sigma = update_sigma(state.sigma, moved, success)
        if success:
            new_merged[state.group] = mutant
            updated[position] = replace(state, best=mutant, sigma=sigma, value=value)
            accepted.append((position, value))
        else:
            updated[position] = replace(state, sigma=sigma)

    merge_evaluated = False
    if not accepted:
        new_value = merged_value
    elif len(accepted) == 1:
        new_value = accepted[0][1]
    elif evaluator.budget.grant(1):
        new_value = evaluator.evaluate(new_merged)
        merge_evaluated = True
    else:
        # No evaluation left to score the merge: keep only the best accepted group
        keep, new_value = min(accepted, key=lambda item: item[1])
        new_merged = np.array(merged, copy=True)
        new_merged[updated[keep].group] = updated[keep].best
        for position, _ in accepted:
            if position != keep:
                updated[position] = replace(
                    updated[position], best=states[position].best, value=states[position].value
                )
        accepted = [(keep, new_value)]

    return CCStepResult(
        states=updated,
        merged=new_merged,
        merged_value=new_value,
        processed=len(work),
        accepted=len(accepted),
        contexts=[frozen] * len(work),
        group_times=[r[3] for r in results],
        merge_evaluated=merge_evaluated,
    )


def _processing_order(count: int, order: GroupOrder, stream: RngStream) -> List[int]:
    if order == GroupOrder.DESCENDING:
        return list(range(count - 1, -1, -1))
    if order == GroupOrder.RANDOM:
        return [int(i) for i in stream.permutation(count)]
    return list(range(count))


def _initial_grouping(
    problem: ObjectiveProblem,
    strategy: GroupingStrategy,
    budget: EvaluationBudget,
    group_count: int,
    epsilon: Optional[float],
    stream: RngStream,
) -> Grouping:
    if strategy == GroupingStrategy.NATURAL:
        return natural_grouping(problem.dimension)
    if strategy == GroupingStrategy.RANDOM:
        return random_grouping(problem.dimension, group_count, stream.generator)
    return differential_grouping(problem, epsilon=epsilon, budget=budget)


def run_cc(
    problem: ObjectiveProblem,
    grouping_strategy: GroupingStrategy,
    workflow: Workflow,
    budget: int,
    seed: int,
    workers: int = 1,
    group_count: Optional[int] = None,
    order: GroupOrder = GroupOrder.ASCENDING,
    epsilon: Optional[float] = None,
    interval: Optional[int] = None,
    run_id: Optional[str] = None,
    draws: Optional[DrawSource] = None,
) -> RunRecord:
    """
    Run one DC baseline until `budget` evaluations are consumed

    Args:
        problem: Objective
        grouping_strategy: natural, random (re-drawn every iteration) or
            differential (computed once, probes charged to the budget)
        workflow: serial or parallel
        budget: T, at least D
        seed: Run seed
        workers: Thread count for the parallel workflow
        group_count: M for random grouping
        order: Group processing order
        epsilon: Differential grouping threshold
        interval: Trajectory checkpoint interval
        run_id: Identifier for the record
        draws: Replacement draw source (scripted traces)

    Returns:
        RunRecord with best-so-far trajectory and the merged solution's error

    Raises:
        ConfigurationException: For invalid combinations
    """
    grouping_strategy = GroupingStrategy(grouping_strategy)
    workflow = Workflow(workflow)
    order = GroupOrder(order)
    dimension = problem.dimension
    if budget < dimension:
        raise ConfigurationException(f"Budget {budget} is smaller than D={dimension}")
    if workers < 1:
        raise ValidationException(f"workers must be >= 1, got {workers}")
    if grouping_strategy == GroupingStrategy.DIFFERENTIAL and budget <= probe_evaluations(dimension) + 1:
        raise ConfigurationException(
            f"Budget {budget} cannot cover {probe_evaluations(dimension)} grouping probes"
        )
    group_count = group_count or settings.RANDOM_GROUP_COUNT

    spec = AlgorithmSpec(kind=AlgorithmKind.CC, grouping=grouping_strategy, workflow=workflow, order=order)
    root = RngStream.from_seed(seed)
    grouping_stream = root.spawn(GROUPING_STREAM)
    order_stream = root.spawn(ORDER_STREAM)
    draw_source: DrawSource = draws if draws is not None else root.spawn(DRAW_STREAM)

    counter = EvaluationBudget(budget)
    evaluator = Evaluator(problem, counter)
    recorder = TrajectoryRecorder(problem.optimum_value, interval)
    logger.info(f"Starting {spec.label} on {problem.name} (seed={seed}, T={budget})")

    start = time.perf_counter()
    grouping = _initial_grouping(problem, grouping_strategy, counter, group_count, epsilon, grouping_stream)
    probes = counter.consumed
    diagnostics = {"groups": float(grouping.count), "probe_evaluations": float(probes)}
    if grouping_strategy == GroupingStrategy.DIFFERENTIAL:
        diagnostics["grouping_accuracy"] = grouping.pairwise_accuracy(true_interaction_groups(problem))

    init = root.spawn(INIT_STREAM).uniform(dimension)
    merged = problem.lower + (problem.upper - problem.lower) * init
    merged_value = evaluator.evaluate(merged)
    recorder.record(counter.consumed, merged_value)
    setup_time = time.perf_counter() - start

    sigmas = [INITIAL_SIGMA] * grouping.count
    states = [
        SubproblemState(group=g, best=merged[g], sigma=INITIAL_SIGMA, value=merged_value)
        for g in grouping.index_arrays()
    ]

    pool = None
    if workflow == Workflow.PARALLEL and workers > 1:
        pool = ThreadPoolExecutor(max_workers=workers)
    iterations = 0
    merge_evaluations = 0
    simulated_time = 0.0
    try:
        while not counter.exhausted:
            if grouping_strategy == GroupingStrategy.RANDOM and iterations > 0:
                grouping = random_grouping(dimension, group_count, grouping_stream.generator)
                states = [
                    SubproblemState(group=g, best=merged[g], sigma=sigmas[k], value=states[k].value)
                    for k, g in enumerate(grouping.index_arrays())
                ]

            iteration_start = time.perf_counter()
            block = draw_source.block(dimension)
            positions = _processing_order(grouping.count, order, order_stream)
            if workflow == Workflow.SERIAL:
                result = cc_step_serial(states, evaluator, block, merged, merged_value, positions)
            else:
                result = cc_step_parallel(states, evaluator, block, merged, merged_value, positions, pool)
            elapsed = time.perf_counter() - iteration_start
            if result.group_times and pool is None:
                # Inline run: charge only the slowest group to the parallel time
                elapsed += max(result.group_times) - sum(result.group_times)
            simulated_time += elapsed

            states, merged, merged_value = result.states, result.merged, result.merged_value
            sigmas = [s.sigma for s in states]
            merge_evaluations += int(result.merge_evaluated)
            iterations += 1
            recorder.record(counter.consumed, merged_value)
            logger.debug(
                f"{spec.label} iteration {iterations}: f={merged_value:.6e}, "
                f"accepted {result.accepted}/{result.processed}"
            )
    finally:
        if pool is not None:
            pool.shutdown(wait=True)

    total_time = time.perf_counter() - start
    recorder.close(counter.consumed)
    final_error = problem.error(merged_value)
    diagnostics["merge_evaluations"] = float(merge_evaluations)
    logger.info(
        f"Finished {spec.label} on {problem.name} (seed={seed}): "
        f"{counter.consumed} evaluations, final error {final_error:.6e}"
    )

    return RunRecord(
        run_id=run_id or f"{spec.label}-s{seed}",
        algo=spec.label,
        problem=problem.name,
        seed=seed,
        config={
            "algorithm": spec.model_dump(mode="json", exclude={"update_rejected"}),
            "budget": budget,
            "group_count": grouping.count,
            "workers": workers,
        },
        trajectory=recorder.points(),
        final_error=final_error,
        consumed=counter.consumed,
        budget=budget,
        timing=TimingRecord(
            total_time=total_time,
            evaluation_time=evaluator.evaluation_time,
            simulated_time=setup_time + simulated_time,
            iteration_count=iterations,
            workers=workers,
        ),
        diagnostics=diagnostics,
    )
