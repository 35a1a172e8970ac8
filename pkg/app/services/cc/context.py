"""
Context Vector
Complementing partial solutions with a full-dimensional assignment
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np

from app.core.exceptions import DimensionMismatchException
from app.services.problems.evaluator import Evaluator


class Provenance(str, Enum):
    """Iteration a group's slice of the context comes from"""
    CURRENT = "t"
    PREVIOUS = "t-1"


@dataclass(frozen=True, eq=False)
class ContextVector:
    """
    Full assignment used to evaluate one group's partial solution

    Groups at positions below `fresh_through` (in processing order) carry
    bests of the current iteration; the rest carry the previous iteration's.
    """
    values: np.ndarray
    fresh_through: int = 0
    group_count: int = 1

    def provenance(self) -> List[Provenance]:
        return [
            Provenance.CURRENT if position < self.fresh_through else Provenance.PREVIOUS
            for position in range(self.group_count)
        ]

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])


@dataclass
class SubproblemState:
    """One group's (1+1) state"""
    group: np.ndarray
    best: np.ndarray
    sigma: float
    value: float  # Last accepted evaluation value

    def __post_init__(self):
        if len(self.best) != len(self.group):
            raise DimensionMismatchException(len(self.group), len(self.best))


def splice(context: np.ndarray, group: np.ndarray, partial: np.ndarray) -> np.ndarray:
    """Copy of `context` with `partial` written at `group`"""
    if len(partial) != len(group):
        raise DimensionMismatchException(len(group), len(partial))
    candidate = np.array(context, dtype=float, copy=True)
    candidate[group] = partial
    return candidate


def evaluate_partial(
    evaluator: Evaluator,
    context: ContextVector,
    group: Sequence[int],
    partial: Sequence[float],
) -> float:
    """
    Evaluate a partial solution complemented by the context

    Charges one evaluation to the evaluator's budget; the context is not
    modified.

    Raises:
        DimensionMismatchException: If len(partial) != len(group)
        BudgetExhaustedException: If the budget is spent
    """
    indices = np.asarray(group, dtype=np.intp)
    candidate = splice(context.values, indices, np.asarray(partial, dtype=float))
    return evaluator.evaluate(candidate)
