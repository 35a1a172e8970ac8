"""
Decomposition Strategies
Natural, random and differential (interaction-detecting) grouping
"""

from typing import TYPE_CHECKING, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from app.core.config import settings
from app.core.exceptions import (
    GroupingException,
    InteractionDetectionException,
    ValidationException,
)
from app.services.decomposition.grouping import Grouping
from app.utils.logging import get_logger

if TYPE_CHECKING:
    from app.services.problems.evaluator import EvaluationBudget
    from app.services.problems.problem_factory import ObjectiveProblem

logger = get_logger(__name__)


def natural_grouping(dimension: int) -> Grouping:
    """D singleton groups in index order"""
    if dimension < 1:
        raise ValidationException(f"Dimension must be >= 1, got {dimension}")
    return Grouping(tuple((i,) for i in range(dimension)), dimension)


def random_grouping(dimension: int, group_count: int, rng: np.random.Generator) -> Grouping:
    """
    Uniformly random permutation cut into `group_count` equal consecutive blocks

    Args:
        dimension: D
        group_count: M, must divide D
        rng: Seeded generator; consumed by exactly one permutation draw

    Returns:
        Grouping with M groups of D/M indices (sorted within each group)
    """
    if group_count < 1 or dimension % group_count != 0:
        raise GroupingException(
            f"Random grouping needs M to divide D (D={dimension}, M={group_count})"
        )
    size = dimension // group_count
    permutation = rng.permutation(dimension)
    groups = tuple(
        tuple(sorted(int(i) for i in permutation[k * size:(k + 1) * size]))
        for k in range(group_count)
    )
    return Grouping(groups, dimension)


def probe_evaluations(dimension: int) -> int:
    """Evaluations consumed by differential grouping: 1 + D + D(D-1)/2"""
    return 1 + dimension + dimension * (dimension - 1) // 2


def interaction_deltas(
    problem: "ObjectiveProblem",
    budget: Optional["EvaluationBudget"] = None,
    delta_fraction: Optional[float] = None,
) -> "tuple[np.ndarray, float]":
    """
    Pairwise finite-difference interaction matrix

    Delta_ij = f(x + d e_i + d e_j) - f(x + d e_i) - f(x + d e_j) + f(x), with x
    the lower-bound corner and d a fixed fraction of the range.

    Returns:
        (symmetric D x D matrix of |Delta_ij| with zero diagonal, f(x))
    """
    fraction = settings.DG_DELTA_FRACTION if delta_fraction is None else delta_fraction
    dimension = problem.dimension
    if budget is not None:
        budget.charge(probe_evaluations(dimension))

    base = np.array(problem.lower, dtype=float)
    step = fraction * (np.asarray(problem.upper) - np.asarray(problem.lower))

    f_base = problem.evaluate(base)
    f_single = np.empty(dimension)
    for i in range(dimension):
        probe = base.copy()
        probe[i] += step[i]
        f_single[i] = problem.evaluate(probe)

    deltas = np.zeros((dimension, dimension))
    for i in range(dimension):
        for j in range(i + 1, dimension):
            probe = base.copy()
            probe[i] += step[i]
            probe[j] += step[j]
            value = problem.evaluate(probe) - f_single[i] - f_single[j] + f_base
            if not np.isfinite(value):
                raise InteractionDetectionException(i, j)
            deltas[i, j] = deltas[j, i] = abs(value)

    return deltas, f_base


def differential_grouping(
    problem: "ObjectiveProblem",
    epsilon: Optional[float] = None,
    budget: Optional["EvaluationBudget"] = None,
) -> Grouping:
    """
    Group variables by the transitive closure of detected pairwise interactions

    Args:
        problem: Objective to probe
        epsilon: Detection threshold; defaults to 1e-9 * max(1, |f(x)|)
        budget: Counter charged with every probe evaluation

    Returns:
        Grouping ordered by smallest member index
    """
    if epsilon is not None and epsilon <= 0:
        raise ValidationException(f"epsilon must be positive, got {epsilon}")

    deltas, f_base = interaction_deltas(problem, budget)
    threshold = epsilon
    if threshold is None:
        threshold = settings.DG_EPSILON_SCALE * max(1.0, abs(f_base))

    adjacency = csr_matrix(deltas > threshold)
    _, labels = connected_components(adjacency, directed=False)

    groups = {}
    for index, label in enumerate(labels):
        groups.setdefault(int(label), []).append(index)
    ordered = sorted(groups.values(), key=lambda g: g[0])

    logger.info(
        f"Differential grouping on {problem.name}: {len(ordered)} groups, "
        f"{probe_evaluations(problem.dimension)} probe evaluations"
    )
    return Grouping.from_lists(ordered, problem.dimension)
