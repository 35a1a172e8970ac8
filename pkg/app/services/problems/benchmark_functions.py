"""
Benchmark Base Functions
Vectorized base functions evaluated on shifted (and possibly rotated) coordinates
"""

from typing import Callable, Dict

import numpy as np

from app.utils.benchmark_constants import BaseFunction

BaseFn = Callable[[np.ndarray], float]

ELLIPTIC_CONDITION = 1e6


def sphere(z: np.ndarray) -> float:
    return float(np.dot(z, z))


def elliptic(z: np.ndarray) -> float:
    """Sum of (10^6)^((i-1)/(n-1)) z_i^2"""
    n = z.shape[0]
    if n == 1:
        return float(z[0] * z[0])
    weights = ELLIPTIC_CONDITION ** (np.arange(n) / (n - 1))
    return float(np.dot(weights, z * z))


def rastrigin(z: np.ndarray) -> float:
    return float(np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0))


def ackley(z: np.ndarray) -> float:
    """expm1 form, exactly zero at z = 0"""
    n = z.shape[0]
    mean_square = np.dot(z, z) / n
    mean_cos = np.sum(np.cos(2.0 * np.pi * z)) / n
    value = -20.0 * np.expm1(-0.2 * np.sqrt(mean_square)) - np.e * np.expm1(mean_cos - 1.0)
    return float(max(value, 0.0))


def ackley_separable(z: np.ndarray) -> float:
    """Sum of one-dimensional Ackley terms; additively separable"""
    terms = -20.0 * np.expm1(-0.2 * np.abs(z)) - np.e * np.expm1(np.cos(2.0 * np.pi * z) - 1.0)
    return float(max(np.sum(terms), 0.0))


def schwefel_1_2(z: np.ndarray) -> float:
    partial = np.cumsum(z)
    return float(np.dot(partial, partial))


def rosenbrock(z: np.ndarray) -> float:
    """Rosenbrock on z = x - o + 1 so the optimum sits at the shift"""
    y = z + 1.0
    head, tail = y[:-1], y[1:]
    return float(np.sum(100.0 * (head * head - tail) ** 2 + (head - 1.0) ** 2))


BLOCK_FUNCTIONS: Dict[BaseFunction, BaseFn] = {
    BaseFunction.SPHERE: sphere,
    BaseFunction.ELLIPTIC: elliptic,
    BaseFunction.RASTRIGIN: rastrigin,
    BaseFunction.ACKLEY: ackley,
    BaseFunction.SCHWEFEL_1_2: schwefel_1_2,
    BaseFunction.ROSENBROCK: rosenbrock,
}

# Separable blocks must be additive so each variable is its own interaction group
SEPARABLE_FUNCTIONS: Dict[BaseFunction, BaseFn] = {
    BaseFunction.SPHERE: sphere,
    BaseFunction.ELLIPTIC: elliptic,
    BaseFunction.RASTRIGIN: rastrigin,
    BaseFunction.ACKLEY: ackley_separable,
}
