"""
Meta-Model
Probabilistic parent/offspring pre-selection without calling f
"""

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Union

import numpy as np

ArrayOrFloat = Union[float, np.ndarray]

INITIAL_PROBABILITY = 1.0
RANDOM_META_PROBABILITY = 0.5
TARGET_SUCCESS_RATE = 0.2
LEARNING_RATE = 1.0 / math.sqrt(2.0)


class OffspringSide(IntEnum):
    """Where the offspring lies relative to its parent"""
    SMALLER = -1
    EQUAL = 0
    LARGER = 1


def probability_floor(dimension: int) -> float:
    return min(1.0, 2.0 / dimension)


@dataclass(frozen=True, eq=False)
class MetaModelState:
    """
    (PS, PL) acceptance probabilities

    Scalars for one variable or arrays for a whole lane; both stay within
    [2/D, 1].
    """
    ps: ArrayOrFloat
    pl: ArrayOrFloat

    @classmethod
    def initial(cls, dimension: int, probability: float = INITIAL_PROBABILITY) -> "MetaModelState":
        return cls(np.full(dimension, probability), np.full(dimension, probability))

    def slice(self, index) -> "MetaModelState":
        return MetaModelState(self.ps[index], self.pl[index])


def offspring_side(parent: ArrayOrFloat, offspring: ArrayOrFloat) -> ArrayOrFloat:
    """Sign of offspring - parent as OffspringSide codes"""
    side = np.sign(np.asarray(offspring, dtype=float) - np.asarray(parent, dtype=float)).astype(np.int8)
    if side.ndim == 0:
        return OffspringSide(int(side))
    return side


def meta_select(
    parent: ArrayOrFloat,
    offspring: ArrayOrFloat,
    model: MetaModelState,
    r: ArrayOrFloat,
) -> ArrayOrFloat:
    """
    Pre-select parent or offspring

    A smaller offspring is accepted iff r <= PS, a larger one iff r <= PL;
    an offspring equal to its parent returns the parent.
    """
    parent_arr = np.asarray(parent, dtype=float)
    offspring_arr = np.asarray(offspring, dtype=float)
    threshold = np.where(offspring_arr < parent_arr, model.ps, model.pl)
    take = (offspring_arr != parent_arr) & (np.asarray(r) <= threshold)
    chosen = np.where(take, offspring_arr, parent_arr)
    if chosen.ndim == 0:
        return float(chosen)
    return chosen


def meta_update(
    model: MetaModelState,
    side: ArrayOrFloat,
    theta: bool,
    dimension: int,
    mask: Optional[np.ndarray] = None,
) -> MetaModelState:
    """
    1/5-rule adaptation of the probability on the offspring's side

    Args:
        model: Current (PS, PL)
        side: OffspringSide code(s)
        theta: Whether the merged vector improved
        dimension: D, sets the floor 2/D
        mask: Restricts the update to these variables

    Returns:
        Updated and clamped model; EQUAL sides are unchanged
    """
    factor = math.exp(LEARNING_RATE * (float(theta) - TARGET_SUCCESS_RATE))
    floor = probability_floor(dimension)
    side_arr = np.asarray(side)
    smaller = side_arr == OffspringSide.SMALLER
    larger = side_arr == OffspringSide.LARGER
    if mask is not None:
        smaller = smaller & mask
        larger = larger & mask

    ps = np.where(smaller, np.clip(np.asarray(model.ps) * factor, floor, 1.0), model.ps)
    pl = np.where(larger, np.clip(np.asarray(model.pl) * factor, floor, 1.0), model.pl)
    if ps.ndim == 0:
        return MetaModelState(float(ps), float(pl))
    return MetaModelState(ps, pl)
