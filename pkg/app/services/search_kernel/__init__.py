"""
Search Kernel Package
(1+1) mutation, step-size adaptation and random streams
"""

from .mutation import (
    Operator,
    cauchy_mutate,
    choose_operator,
    gaussian_mask,
    gaussian_mutate,
    mutate,
)
from .step_size import (
    FAILURE_FACTOR,
    INITIAL_SIGMA,
    SUCCESS_FACTOR,
    update_sigma,
    update_sigmas,
)
from .streams import DrawBlock, RngStream, ScriptedDraws

__all__ = [
    "Operator",
    "cauchy_mutate",
    "choose_operator",
    "gaussian_mask",
    "gaussian_mutate",
    "mutate",
    "FAILURE_FACTOR",
    "INITIAL_SIGMA",
    "SUCCESS_FACTOR",
    "update_sigma",
    "update_sigmas",
    "DrawBlock",
    "RngStream",
    "ScriptedDraws",
]
