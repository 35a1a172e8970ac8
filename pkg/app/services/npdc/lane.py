"""
NPDC Lane
One (1+1) instance over D one-dimensional subproblems and its iteration
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from app.core.exceptions import BudgetExhaustedException
from app.services.npdc.chunking import VariableChunker
from app.services.npdc.meta_model import (
    RANDOM_META_PROBABILITY,
    MetaModelState,
    meta_select,
    meta_update,
)
from app.services.problems.evaluator import Evaluator
from app.services.search_kernel import INITIAL_SIGMA, DrawBlock, mutate, update_sigmas
from app.utils.algorithm_constants import NPDCVariant


@dataclass(frozen=True, eq=False)
class Lane:
    """
    State of lane i

    fb is f of the lane's current accepted vector `best`.
    """
    index: int
    best: np.ndarray
    sigma: np.ndarray
    model: MetaModelState
    fb: float
    iterations: int = 0
    meta_updates: int = 0

    @property
    def dimension(self) -> int:
        return int(self.best.shape[0])


def initial_lane(
    index: int,
    evaluator: Evaluator,
    unit: np.ndarray,
    variant: NPDCVariant = NPDCVariant.STANDARD,
) -> Lane:
    """
    Lane with bests drawn uniformly in the bounds (`unit` in [0, 1)^D)

    Charges one evaluation.
    """
    problem = evaluator.problem
    best = problem.lower + (problem.upper - problem.lower) * unit
    probability = RANDOM_META_PROBABILITY if variant == NPDCVariant.RANDOM_META else 1.0
    return Lane(
        index=index,
        best=best,
        sigma=np.full(problem.dimension, INITIAL_SIGMA),
        model=MetaModelState.initial(problem.dimension, probability),
        fb=evaluator.evaluate(best),
    )


def npdc_iteration(
    lane: Lane,
    evaluator: Evaluator,
    draws: DrawBlock,
    chunker: Optional[VariableChunker] = None,
    variant: NPDCVariant = NPDCVariant.STANDARD,
    update_rejected: bool = False,
) -> Lane:
    """
    One iteration of one lane

    Every variable mutates and is pre-selected by the meta-model, then the
    pre-selected vector gets one merged evaluation. Meta-models and step
    sizes adapt on whether that evaluation beat fb; on failure the lane's
    bests revert.

    Args:
        lane: Lane before the iteration
        evaluator: Charged exactly once
        draws: Column j is variable j's draws; drawn whole before chunking, so the
            worker count never changes which draws a variable sees
        chunker: Splits per-variable work; inline when omitted
        variant: standard, or random-meta (no meta-model adaptation)
        update_rejected: Also adapt variables whose offspring was rejected at
            pre-selection; by default only variables that entered the merged
            vector adapt

    Returns:
        Updated lane (a new object; the input is not modified)

    Raises:
        BudgetExhaustedException: If no evaluation is left; lane unchanged
    """
    if evaluator.budget.exhausted:
        raise BudgetExhaustedException(evaluator.budget.limit or 0)

    problem = evaluator.problem
    dimension = lane.dimension
    chunker = chunker or VariableChunker(dimension)
    parent = lane.best
    offspring = np.empty(dimension)
    selected = np.empty(dimension)

    def mutate_and_select(chunk: slice) -> None:
        offspring[chunk] = mutate(
            parent[chunk],
            lane.sigma[chunk],
            draws.choice[chunk],
            draws.normal[chunk],
            draws.cauchy[chunk],
            problem.lower[chunk],
            problem.upper[chunk],
        )
        selected[chunk] = meta_select(
            parent[chunk], offspring[chunk], lane.model.slice(chunk), draws.accept[chunk]
        )

    chunker.run(mutate_and_select)

    # Barrier: single merged evaluation
    value = evaluator.evaluate(selected)
    theta = value < lane.fb

    ps = np.array(lane.model.ps, copy=True)
    pl = np.array(lane.model.pl, copy=True)
    sigma = np.empty(dimension)
    adapt_model = variant == NPDCVariant.STANDARD

    def adapt(chunk: slice) -> None:
        side = np.sign(offspring[chunk] - parent[chunk]).astype(np.int8)
        moved = side != 0
        if not update_rejected:
            moved &= selected[chunk] == offspring[chunk]
        if adapt_model:
            updated = meta_update(
                lane.model.slice(chunk), side, theta, dimension, mask=moved
            )
            ps[chunk] = updated.ps
            pl[chunk] = updated.pl
        sigma[chunk] = update_sigmas(lane.sigma[chunk], moved, theta)

    chunker.run(adapt)

    return replace(
        lane,
        best=selected if theta else parent,
        fb=value if theta else lane.fb,
        sigma=sigma,
        model=MetaModelState(ps, pl),
        iterations=lane.iterations + 1,
        meta_updates=lane.meta_updates + int(adapt_model),
    )
