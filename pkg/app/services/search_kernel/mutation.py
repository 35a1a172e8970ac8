"""
Mutation Operators
Gaussian and Cauchy (1+1) mutation with the coin-flip operator choice
"""

from enum import Enum
from typing import Union

import numpy as np

ArrayOrFloat = Union[float, np.ndarray]

OPERATOR_THRESHOLD = 0.5


class Operator(str, Enum):
    """Mutation operator"""
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"


def gaussian_mutate(parent: ArrayOrFloat, sigma: ArrayOrFloat, z: ArrayOrFloat) -> ArrayOrFloat:
    """parent + sigma * z with z standard normal"""
    return parent + sigma * z


def cauchy_mutate(parent: ArrayOrFloat, sigma: ArrayOrFloat, c: ArrayOrFloat) -> ArrayOrFloat:
    """parent + sigma * c with c standard Cauchy"""
    return parent + sigma * c


def choose_operator(u: float) -> Operator:
    """Gaussian iff u > 0.5; the boundary goes to Cauchy"""
    return Operator.GAUSSIAN if u > OPERATOR_THRESHOLD else Operator.CAUCHY


def gaussian_mask(u: np.ndarray) -> np.ndarray:
    """Vectorized choose_operator: True where the Gaussian operator applies"""
    return np.asarray(u) > OPERATOR_THRESHOLD


def mutate(
    parent: np.ndarray,
    sigma: ArrayOrFloat,
    choice: np.ndarray,
    normal: np.ndarray,
    cauchy: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
) -> np.ndarray:
    """
    Mutate every component with its own operator choice, then clamp

    Args:
        parent: Parent values
        sigma: Step size, scalar or one per component
        choice: Uniform draws deciding the operator per component
        normal: Standard normal draws
        cauchy: Standard Cauchy draws
        lower: Lower bounds
        upper: Upper bounds

    Returns:
        Feasible offspring
    """
    offspring = np.where(
        gaussian_mask(choice),
        gaussian_mutate(parent, sigma, normal),
        cauchy_mutate(parent, sigma, cauchy),
    )
    return np.clip(offspring, lower, upper)
