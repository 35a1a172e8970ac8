"""
Step Size Adaptation
Multiplicative 1/5 success rule for the mutation strength
"""

import math
from typing import Union

import numpy as np

INITIAL_SIGMA = 1.0
SUCCESS_FACTOR = math.exp(0.8 / math.sqrt(2.0))
FAILURE_FACTOR = math.exp(-0.2 / math.sqrt(2.0))


def update_sigma(sigma: float, moved: bool, success: bool) -> float:
    """
    Adapt sigma after one trial

    Unchanged when the offspring did not move; enlarged on success, shrunk
    otherwise.
    """
    if not moved:
        return sigma
    return sigma * (SUCCESS_FACTOR if success else FAILURE_FACTOR)


def update_sigmas(
    sigmas: np.ndarray,
    moved: np.ndarray,
    success: Union[bool, np.ndarray],
) -> np.ndarray:
    """Vectorized update_sigma"""
    factor = np.where(success, SUCCESS_FACTOR, FAILURE_FACTOR)
    return np.where(moved, sigmas * factor, sigmas)
